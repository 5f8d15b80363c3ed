#include "ciflin/predicate.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>

namespace ciflin {

namespace {

std::shared_ptr<Expr> new_expr(Expr::Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

std::shared_ptr<Pred> new_pred(Pred::Kind k) {
    auto p = std::make_shared<Pred>();
    p->kind = k;
    return p;
}

} // namespace

ExprPtr mk_literal(Value v) {
    auto e = new_expr(Expr::Kind::Literal);
    e->literal = std::move(v);
    return e;
}

ExprPtr mk_var(VarRef v) {
    auto e = new_expr(Expr::Kind::Var);
    e->var = std::move(v);
    return e;
}

ExprPtr mk_add(ExprPtr l, ExprPtr r) {
    auto e = new_expr(Expr::Kind::Add);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr mk_sub(ExprPtr l, ExprPtr r) {
    auto e = new_expr(Expr::Kind::Sub);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr mk_list(std::vector<ExprPtr> elements) {
    auto e = new_expr(Expr::Kind::ListLit);
    e->elements = std::move(elements);
    return e;
}

ExprPtr mk_concat(ExprPtr l, ExprPtr r) {
    auto e = new_expr(Expr::Kind::Concat);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

PredPtr pred_true() {
    static const PredPtr t = new_pred(Pred::Kind::True);
    return t;
}

PredPtr pred_false() {
    static const PredPtr f = new_pred(Pred::Kind::False);
    return f;
}

PredPtr mk_cmp(CmpOp op, ExprPtr l, ExprPtr r) {
    auto p = new_pred(Pred::Kind::Cmp);
    p->op = op;
    p->lhs = std::move(l);
    p->rhs = std::move(r);
    return p;
}

PredPtr mk_and(PredPtr l, PredPtr r) {
    auto p = new_pred(Pred::Kind::And);
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}

PredPtr mk_or(PredPtr l, PredPtr r) {
    auto p = new_pred(Pred::Kind::Or);
    p->left = std::move(l);
    p->right = std::move(r);
    return p;
}

PredPtr mk_member(VarRef var, std::vector<std::string> locs) {
    auto p = new_pred(Pred::Kind::Member);
    p->member_var = std::move(var);
    p->member_locs = std::move(locs);
    return p;
}

PredPtr conjoin(const std::vector<PredPtr>& ps) {
    if (ps.empty()) return pred_true();
    PredPtr acc = ps.front();
    for (std::size_t i = 1; i < ps.size(); ++i) acc = mk_and(acc, ps[i]);
    return acc;
}

PredPtr disjoin(const std::vector<PredPtr>& ps) {
    if (ps.empty()) return pred_false();
    PredPtr acc = ps.front();
    for (std::size_t i = 1; i < ps.size(); ++i) acc = mk_or(acc, ps[i]);
    return acc;
}

bool struct_eq(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Literal:
        return a->literal == b->literal;
    case Expr::Kind::Var:
        return a->var == b->var;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Concat:
        return struct_eq(a->lhs, b->lhs) && struct_eq(a->rhs, b->rhs);
    case Expr::Kind::ListLit:
        if (a->elements.size() != b->elements.size()) return false;
        for (std::size_t i = 0; i < a->elements.size(); ++i)
            if (!struct_eq(a->elements[i], b->elements[i])) return false;
        return true;
    }
    return false;
}

bool struct_eq(const PredPtr& a, const PredPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Pred::Kind::True:
    case Pred::Kind::False:
        return true;
    case Pred::Kind::Cmp:
        return a->op == b->op && struct_eq(a->lhs, b->lhs) && struct_eq(a->rhs, b->rhs);
    case Pred::Kind::And:
    case Pred::Kind::Or:
        return struct_eq(a->left, b->left) && struct_eq(a->right, b->right);
    case Pred::Kind::Member:
        return a->member_var == b->member_var && a->member_locs == b->member_locs;
    }
    return false;
}

Value eval_expr(const ExprPtr& e, const EvalEnv& env) {
    switch (e->kind) {
    case Expr::Kind::Literal:
        return e->literal;
    case Expr::Kind::Var: {
        auto it = env.find(e->var);
        if (it == env.end())
            throw EvalError("unbound variable '" + e->var.to_string() + "'");
        return it->second;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        Value l = eval_expr(e->lhs, env);
        Value r = eval_expr(e->rhs, env);
        if (!l.is_int() || !r.is_int())
            throw EvalError("arithmetic on non-integer operands");
        return Value::integer(e->kind == Expr::Kind::Add ? l.as_int() + r.as_int()
                                                         : l.as_int() - r.as_int());
    }
    case Expr::Kind::ListLit: {
        Value::List xs;
        xs.reserve(e->elements.size());
        for (const auto& el : e->elements) xs.push_back(eval_expr(el, env));
        return Value::list(std::move(xs));
    }
    case Expr::Kind::Concat: {
        Value l = eval_expr(e->lhs, env);
        Value r = eval_expr(e->rhs, env);
        if (!l.is_list() || !r.is_list())
            throw EvalError("concatenation of non-list operands");
        Value::List xs = l.as_list();
        const auto& ys = r.as_list();
        xs.insert(xs.end(), ys.begin(), ys.end());
        return Value::list(std::move(xs));
    }
    }
    throw EvalError("corrupt expression");
}

bool eval_pred(const PredPtr& p, const EvalEnv& env) {
    switch (p->kind) {
    case Pred::Kind::True:
        return true;
    case Pred::Kind::False:
        return false;
    case Pred::Kind::Cmp: {
        Value l = eval_expr(p->lhs, env);
        Value r = eval_expr(p->rhs, env);
        if (p->op == CmpOp::Eq) {
            // Structural equality; kinds must agree except that the empty
            // list compares against any list kind.
            if (l.kind() != r.kind())
                throw EvalError("'==' on operands of different kinds");
            return l == r;
        }
        if (!l.is_int() || !r.is_int())
            throw EvalError("'<=' on non-integer operands");
        return l.as_int() <= r.as_int();
    }
    case Pred::Kind::And:
        return eval_pred(p->left, env) && eval_pred(p->right, env);
    case Pred::Kind::Or:
        return eval_pred(p->left, env) || eval_pred(p->right, env);
    case Pred::Kind::Member: {
        auto it = env.find(p->member_var);
        if (it == env.end())
            throw EvalError("unbound variable '" + p->member_var.to_string() + "'");
        if (!it->second.is_loc())
            throw EvalError("'in' on a non-location value");
        const std::string& loc = it->second.as_loc();
        return std::find(p->member_locs.begin(), p->member_locs.end(), loc) !=
               p->member_locs.end();
    }
    }
    throw EvalError("corrupt predicate");
}

void collect_free_vars(const ExprPtr& e, std::set<VarRef>& out) {
    switch (e->kind) {
    case Expr::Kind::Literal:
        return;
    case Expr::Kind::Var:
        out.insert(e->var);
        return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Concat:
        collect_free_vars(e->lhs, out);
        collect_free_vars(e->rhs, out);
        return;
    case Expr::Kind::ListLit:
        for (const auto& el : e->elements) collect_free_vars(el, out);
        return;
    }
}

void collect_free_vars(const PredPtr& p, std::set<VarRef>& out) {
    switch (p->kind) {
    case Pred::Kind::True:
    case Pred::Kind::False:
        return;
    case Pred::Kind::Cmp:
        collect_free_vars(p->lhs, out);
        collect_free_vars(p->rhs, out);
        return;
    case Pred::Kind::And:
    case Pred::Kind::Or:
        collect_free_vars(p->left, out);
        collect_free_vars(p->right, out);
        return;
    case Pred::Kind::Member:
        out.insert(p->member_var);
        return;
    }
}

std::set<VarRef> free_vars(const PredPtr& p) {
    std::set<VarRef> out;
    collect_free_vars(p, out);
    return out;
}

namespace {

// Expression precedence: binary +/-/++ chains print left-associated; a
// right operand that is itself binary gets parentheses so the tree shape
// survives a round trip.
bool expr_is_binary(const ExprPtr& e) {
    return e->kind == Expr::Kind::Add || e->kind == Expr::Kind::Sub ||
           e->kind == Expr::Kind::Concat;
}

std::string expr_str(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Literal:
        return e->literal.to_string();
    case Expr::Kind::Var:
        return e->var.to_string();
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Concat: {
        const char* op = e->kind == Expr::Kind::Add   ? " + "
                         : e->kind == Expr::Kind::Sub ? " - "
                                                      : " ++ ";
        std::string r = expr_str(e->rhs);
        if (expr_is_binary(e->rhs)) r = "(" + r + ")";
        return expr_str(e->lhs) + op + r;
    }
    case Expr::Kind::ListLit: {
        std::string out = "[";
        for (std::size_t i = 0; i < e->elements.size(); ++i) {
            if (i > 0) out += ", ";
            out += expr_str(e->elements[i]);
        }
        return out + "]";
    }
    }
    return "?";
}

// Predicate precedence levels: Or(1) < And(2) < atom(3).
int pred_level(const PredPtr& p) {
    switch (p->kind) {
    case Pred::Kind::Or:
        return 1;
    case Pred::Kind::And:
        return 2;
    default:
        return 3;
    }
}

std::string pred_str(const PredPtr& p, int parent_level) {
    std::string out;
    switch (p->kind) {
    case Pred::Kind::True:
        out = "true";
        break;
    case Pred::Kind::False:
        out = "false";
        break;
    case Pred::Kind::Cmp:
        out = expr_str(p->lhs) + (p->op == CmpOp::Eq ? " == " : " <= ") + expr_str(p->rhs);
        break;
    case Pred::Kind::And: {
        // Left-associated chains print flat; a right operand at the same
        // level is parenthesized to preserve shape.
        std::string r = pred_str(p->right, 2);
        if (p->right->kind == Pred::Kind::And) r = "(" + r + ")";
        out = pred_str(p->left, 2) + " && " + r;
        break;
    }
    case Pred::Kind::Or: {
        std::string r = pred_str(p->right, 1);
        if (p->right->kind == Pred::Kind::Or) r = "(" + r + ")";
        out = pred_str(p->left, 1) + " || " + r;
        break;
    }
    case Pred::Kind::Member: {
        out = p->member_var.to_string() + " in {";
        for (std::size_t i = 0; i < p->member_locs.size(); ++i) {
            if (i > 0) out += ", ";
            out += p->member_locs[i];
        }
        out += "}";
        break;
    }
    }
    if (pred_level(p) < parent_level) out = "(" + out + ")";
    return out;
}

} // namespace

std::string to_string(const ExprPtr& e) { return expr_str(e); }

std::string to_string(const PredPtr& p) { return pred_str(p, 1); }

namespace {

void flatten_conj(const PredPtr& p, std::vector<PredPtr>& out) {
    if (p->kind == Pred::Kind::And) {
        flatten_conj(p->left, out);
        flatten_conj(p->right, out);
        return;
    }
    if (p->kind == Pred::Kind::True) return;
    out.push_back(p);
}

} // namespace

Conj Conj::from(const PredPtr& p) {
    Conj c;
    flatten_conj(p, c.items_);
    return c;
}

Conj Conj::of_items(std::vector<PredPtr> items) {
    Conj c;
    for (auto& p : items) flatten_conj(p, c.items_);
    return c;
}

Conj Conj::then(const Conj& other) const {
    Conj c;
    c.items_ = items_;
    c.items_.insert(c.items_.end(), other.items_.begin(), other.items_.end());
    return c;
}

bool Conj::has_false_conjunct() const {
    for (const auto& p : items_)
        if (p->kind == Pred::Kind::False) return true;
    return false;
}

PredPtr Conj::to_pred() const { return conjoin(items_); }

std::string Conj::to_string() const {
    if (items_.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i > 0) out += " && ";
        out += pred_str(items_[i], 2);
    }
    return out;
}

bool Conj::operator==(const Conj& other) const {
    if (items_.size() != other.items_.size()) return false;
    for (std::size_t i = 0; i < items_.size(); ++i)
        if (!struct_eq(items_[i], other.items_[i])) return false;
    return true;
}

namespace {

ExprPtr simplify_expr(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Var:
        return e;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        ExprPtr l = simplify_expr(e->lhs);
        ExprPtr r = simplify_expr(e->rhs);
        if (l->kind == Expr::Kind::Literal && r->kind == Expr::Kind::Literal &&
            l->literal.is_int() && r->literal.is_int()) {
            std::int64_t v = e->kind == Expr::Kind::Add
                                 ? l->literal.as_int() + r->literal.as_int()
                                 : l->literal.as_int() - r->literal.as_int();
            return mk_literal(Value::integer(v));
        }
        return e->kind == Expr::Kind::Add ? mk_add(l, r) : mk_sub(l, r);
    }
    case Expr::Kind::ListLit: {
        std::vector<ExprPtr> els;
        els.reserve(e->elements.size());
        for (const auto& el : e->elements) els.push_back(simplify_expr(el));
        return mk_list(std::move(els));
    }
    case Expr::Kind::Concat: {
        ExprPtr l = simplify_expr(e->lhs);
        ExprPtr r = simplify_expr(e->rhs);
        return mk_concat(l, r);
    }
    }
    return e;
}

} // namespace

PredPtr simplify_pred(const PredPtr& p) {
    switch (p->kind) {
    case Pred::Kind::True:
    case Pred::Kind::False:
    case Pred::Kind::Member:
        return p;
    case Pred::Kind::Cmp: {
        ExprPtr l = simplify_expr(p->lhs);
        ExprPtr r = simplify_expr(p->rhs);
        if (l->kind == Expr::Kind::Literal && r->kind == Expr::Kind::Literal) {
            const Value& lv = l->literal;
            const Value& rv = r->literal;
            if (p->op == CmpOp::Eq && lv.kind() == rv.kind())
                return lv == rv ? pred_true() : pred_false();
            if (p->op == CmpOp::Le && lv.is_int() && rv.is_int())
                return lv.as_int() <= rv.as_int() ? pred_true() : pred_false();
        }
        return mk_cmp(p->op, l, r);
    }
    case Pred::Kind::And: {
        PredPtr l = simplify_pred(p->left);
        PredPtr r = simplify_pred(p->right);
        if (l->kind == Pred::Kind::False || r->kind == Pred::Kind::False) return pred_false();
        if (l->kind == Pred::Kind::True) return r;
        if (r->kind == Pred::Kind::True) return l;
        return mk_and(l, r);
    }
    case Pred::Kind::Or: {
        PredPtr l = simplify_pred(p->left);
        PredPtr r = simplify_pred(p->right);
        if (l->kind == Pred::Kind::True || r->kind == Pred::Kind::True) return pred_true();
        if (l->kind == Pred::Kind::False) return r;
        if (r->kind == Pred::Kind::False) return l;
        return mk_or(l, r);
    }
    }
    return p;
}

} // namespace ciflin
