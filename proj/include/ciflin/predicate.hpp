#pragma once

#include "ciflin/value.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ciflin {

struct Expr;
struct Pred;
using ExprPtr = std::shared_ptr<const Expr>;
using PredPtr = std::shared_ptr<const Pred>;

// Expression layer of the predicate language: literals, variable
// references, integer +/-, list literals and list concatenation.
struct Expr {
    enum class Kind { Literal, Var, Add, Sub, ListLit, Concat };

    Kind kind;
    Value literal;                   // Literal
    VarRef var;                      // Var
    ExprPtr lhs, rhs;                // Add, Sub, Concat
    std::vector<ExprPtr> elements;   // ListLit
    int line = 0, col = 0;           // source position; ignored by equality
};

ExprPtr mk_literal(Value v);
ExprPtr mk_var(VarRef v);
ExprPtr mk_add(ExprPtr l, ExprPtr r);
ExprPtr mk_sub(ExprPtr l, ExprPtr r);
ExprPtr mk_list(std::vector<ExprPtr> elements);
ExprPtr mk_concat(ExprPtr l, ExprPtr r);

enum class CmpOp { Eq, Le };

// Predicate AST: true | false | cmp | and | or | membership of a
// location-pointer variable in a location set (linearizer init only).
struct Pred {
    enum class Kind { True, False, Cmp, And, Or, Member };

    Kind kind;
    CmpOp op = CmpOp::Eq;                  // Cmp
    ExprPtr lhs, rhs;                      // Cmp
    PredPtr left, right;                   // And, Or
    VarRef member_var;                     // Member
    std::vector<std::string> member_locs;  // Member
    int line = 0, col = 0;
};

PredPtr pred_true();
PredPtr pred_false();
PredPtr mk_cmp(CmpOp op, ExprPtr l, ExprPtr r);
PredPtr mk_and(PredPtr l, PredPtr r);
PredPtr mk_or(PredPtr l, PredPtr r);
PredPtr mk_member(VarRef var, std::vector<std::string> locs);

// Left-associated conjunction/disjunction of a non-empty list; the empty
// list yields the neutral literal.
PredPtr conjoin(const std::vector<PredPtr>& ps);
PredPtr disjoin(const std::vector<PredPtr>& ps);

// Structural equality; source positions are ignored.
bool struct_eq(const ExprPtr& a, const ExprPtr& b);
bool struct_eq(const PredPtr& a, const PredPtr& b);

// Evaluation environment: primed and plain refs are distinct keys.
using EvalEnv = std::map<VarRef, Value>;

Value eval_expr(const ExprPtr& e, const EvalEnv& env);
bool eval_pred(const PredPtr& p, const EvalEnv& env);

std::set<VarRef> free_vars(const PredPtr& p);
void collect_free_vars(const ExprPtr& e, std::set<VarRef>& out);
void collect_free_vars(const PredPtr& p, std::set<VarRef>& out);

// DSL syntax rendering (re-parsable).
std::string to_string(const ExprPtr& e);
std::string to_string(const PredPtr& p);

// Flattened conjunction with literal-true units dropped. Conjunct order is
// the in-order traversal of the and-spine (left operand first); equality is
// element-wise structural equality, no commutative reordering.
class Conj {
public:
    Conj() = default;
    static Conj from(const PredPtr& p);
    static Conj of_items(std::vector<PredPtr> items);

    // this ++ other, preserving order.
    Conj then(const Conj& other) const;

    const std::vector<PredPtr>& items() const { return items_; }
    bool trivially_true() const { return items_.empty(); }
    bool has_false_conjunct() const;

    PredPtr to_pred() const;           // left-assoc and-tree; true if empty
    std::string to_string() const;     // "true" if empty

    bool operator==(const Conj& other) const;
    bool operator!=(const Conj& other) const { return !(*this == other); }

private:
    std::vector<PredPtr> items_;
};

// Best-effort simplifier for human-readable output: constant folding and
// true/false absorption. Semantics-preserving; not a normal form.
PredPtr simplify_pred(const PredPtr& p);

} // namespace ciflin
