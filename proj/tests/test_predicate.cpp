#include <doctest.h>

#include "ciflin/errors.hpp"
#include "ciflin/generator.hpp"
#include "ciflin/parser.hpp"

#include "testutil.hpp"

using namespace ciflin;

namespace {

EvalEnv env(std::initializer_list<std::pair<VarRef, Value>> entries) {
    EvalEnv e;
    for (auto& [k, v] : entries) e.emplace(k, v);
    return e;
}

// Random predicate over integer variables x0, x1 with plain refs only.
PredPtr random_pred(SplitMix64& rng, int depth = 0) {
    if (depth < 2 && rng.chance(50)) {
        PredPtr l = random_pred(rng, depth + 1);
        PredPtr r = random_pred(rng, depth + 1);
        return rng.chance(50) ? mk_and(l, r) : mk_or(l, r);
    }
    switch (rng.below(4)) {
    case 0:
        return pred_true();
    case 1:
        return pred_false();
    default: {
        ExprPtr x = mk_var(VarRef{rng.chance(50) ? "x0" : "x1", false});
        ExprPtr c = mk_literal(Value::integer(rng.range(0, 3)));
        return mk_cmp(rng.chance(50) ? CmpOp::Eq : CmpOp::Le, x, c);
    }
    }
}

} // namespace

TEST_CASE("eval_pred: literal comparisons") {
    auto n0 = env({{VarRef{"n", false}, Value::integer(0)}});
    PredPtr p = mk_cmp(CmpOp::Eq, mk_var(VarRef{"n", false}), mk_literal(Value::integer(0)));
    CHECK(eval_pred(p, n0));
    CHECK_FALSE(eval_pred(pred_false(), {}));
    CHECK(eval_pred(pred_true(), {}));
}

TEST_CASE("eval_pred: list concatenation reset") {
    // wq' == wq ++ [id'] under wq=[], wq'=[0], id'=0
    PredPtr p = mk_cmp(CmpOp::Eq, mk_var(VarRef{"wq", true}),
                       mk_concat(mk_var(VarRef{"wq", false}),
                                 mk_list({mk_var(VarRef{"id", true})})));
    auto e = env({{VarRef{"wq", false}, Value::list({})},
                  {VarRef{"wq", true}, testutil::int_list({0})},
                  {VarRef{"id", true}, Value::integer(0)}});
    CHECK(eval_pred(p, e));
    e[VarRef{"wq", true}] = testutil::int_list({1});
    CHECK_FALSE(eval_pred(p, e));
}

TEST_CASE("eval_pred: errors") {
    PredPtr p = mk_cmp(CmpOp::Eq, mk_var(VarRef{"n", false}), mk_literal(Value::integer(0)));
    CHECK_THROWS_AS(eval_pred(p, {}), EvalError);
    PredPtr q = mk_cmp(CmpOp::Le, mk_literal(Value::boolean(true)),
                       mk_literal(Value::integer(0)));
    CHECK_THROWS_AS(eval_pred(q, {}), EvalError);
    PredPtr mixed =
        mk_cmp(CmpOp::Eq, mk_literal(Value::boolean(true)), mk_literal(Value::integer(1)));
    CHECK_THROWS_AS(eval_pred(mixed, {}), EvalError);
}

TEST_CASE("free_vars keeps primed and plain refs distinct") {
    PredPtr p = mk_cmp(CmpOp::Eq, mk_var(VarRef{"wq", true}),
                       mk_concat(mk_var(VarRef{"wq", false}),
                                 mk_list({mk_var(VarRef{"id", true})})));
    std::set<VarRef> fv = free_vars(p);
    CHECK(fv == std::set<VarRef>{VarRef{"wq", true}, VarRef{"wq", false}, VarRef{"id", true}});
    CHECK(free_vars(pred_true()).empty());

    PredPtr q = mk_and(
        mk_cmp(CmpOp::Eq, mk_var(VarRef{"n", false}), mk_literal(Value::integer(0))),
        mk_cmp(CmpOp::Le, mk_var(VarRef{"n", false}), mk_literal(Value::integer(1))));
    CHECK(free_vars(q) == std::set<VarRef>{VarRef{"n", false}});
}

TEST_CASE("eval homomorphism and free_vars union over random predicates") {
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        PredPtr p = random_pred(rng);
        PredPtr q = random_pred(rng);
        auto e = env({{VarRef{"x0", false}, Value::integer(rng.range(0, 3))},
                      {VarRef{"x1", false}, Value::integer(rng.range(0, 3))}});
        CHECK(eval_pred(mk_and(p, q), e) == (eval_pred(p, e) && eval_pred(q, e)));
        CHECK(eval_pred(mk_or(p, q), e) == (eval_pred(p, e) || eval_pred(q, e)));
        std::set<VarRef> u = free_vars(p);
        auto fq = free_vars(q);
        u.insert(fq.begin(), fq.end());
        CHECK(free_vars(mk_and(p, q)) == u);
    }
}

TEST_CASE("Conj flattens and-spines and drops true units") {
    PredPtr a = mk_cmp(CmpOp::Eq, mk_var(VarRef{"x0", false}), mk_literal(Value::integer(1)));
    PredPtr b = mk_cmp(CmpOp::Le, mk_var(VarRef{"x1", false}), mk_literal(Value::integer(2)));
    Conj c = Conj::from(mk_and(mk_and(a, pred_true()), mk_and(pred_true(), b)));
    REQUIRE(c.items().size() == 2);
    CHECK(struct_eq(c.items()[0], a));
    CHECK(struct_eq(c.items()[1], b));
    CHECK(c.to_string() == "x0 == 1 && x1 <= 2");
    CHECK(Conj::from(pred_true()).trivially_true());
    CHECK(Conj::from(pred_true()).to_string() == "true");
    CHECK(Conj::from(mk_and(a, pred_false())).has_false_conjunct());
    CHECK(Conj::from(a).then(Conj::from(b)) == c);
}

TEST_CASE("predicate printing round-trips through the parser") {
    Model ctx = testutil::traingate();
    SUBCASE("hand-picked forms") {
        for (const char* text : {
                 "n == 0",
                 "n <= 1",
                 "wq' == wq ++ [id']",
                 "[p'] ++ wq' == wq",
                 "p' == 0 && n' == n + 1",
                 "n == 0 || (n <= 1 && wq == [])",
                 "n + 1 - 1 <= 2",
                 "wq == [0, 1]",
             }) {
            PredPtr p = parse_predicate(text, ctx);
            PredPtr q = parse_predicate(to_string(p), ctx);
            CAPTURE(text);
            CHECK(struct_eq(p, q));
        }
    }
    SUBCASE("shape preserved for right-nested operands") {
        PredPtr p = parse_predicate("n == 0 && (n <= 1 && n <= 2)", ctx);
        CHECK(p->left->kind == Pred::Kind::Cmp);
        CHECK(p->right->kind == Pred::Kind::And);
        CHECK(struct_eq(parse_predicate(to_string(p), ctx), p));
    }
}

TEST_CASE("simplify_pred folds constants and absorbs units") {
    Model ctx = testutil::traingate();
    CHECK(simplify_pred(parse_predicate("1 <= 2", ctx))->kind == Pred::Kind::True);
    CHECK(simplify_pred(parse_predicate("2 <= 1", ctx))->kind == Pred::Kind::False);
    PredPtr p = simplify_pred(parse_predicate("n == 0 && true", ctx));
    CHECK(to_string(p) == "n == 0");
    PredPtr q = simplify_pred(parse_predicate("n == 0 || true", ctx));
    CHECK(q->kind == Pred::Kind::True);
    PredPtr r = simplify_pred(parse_predicate("n == 1 + 1", ctx));
    CHECK(to_string(r) == "n == 2");
}
