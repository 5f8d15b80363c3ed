#include "ciflin/generator.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>

namespace ciflin {

namespace {

struct Gen {
    SplitMix64 rng;
    GenParams params;
    Model model;

    explicit Gen(std::uint64_t seed, const GenParams& p) : rng(seed), params(p) {}

    ExprPtr var(const std::string& name, bool primed) {
        return mk_var(VarRef{name, primed});
    }

    ExprPtr int_lit(std::int64_t v) { return mk_literal(Value::integer(v)); }

    const Domain& domain_of(const std::string& name) { return *model.domains.find(name); }

    std::string pick_var() {
        return model.domains.vars[rng.below(model.domains.vars.size())].first;
    }

    // A data predicate over one variable: satisfiable by construction for
    // at least one value of its domain.
    PredPtr simple_pred() {
        std::string x = pick_var();
        const Domain& d = domain_of(x);
        if (d.kind == Domain::Kind::Bool)
            return mk_cmp(CmpOp::Eq, var(x, false), mk_literal(Value::boolean(rng.chance(50))));
        std::int64_t c = rng.range(d.lo, d.hi);
        if (rng.chance(40)) return mk_cmp(CmpOp::Le, var(x, false), int_lit(c));
        return mk_cmp(CmpOp::Eq, var(x, false), int_lit(c));
    }

    // One update conjunct x' == e for a given variable.
    PredPtr update_for(const std::string& x) {
        const Domain& d = domain_of(x);
        if (d.kind == Domain::Kind::Bool)
            return mk_cmp(CmpOp::Eq, var(x, true), mk_literal(Value::boolean(rng.chance(50))));
        switch (rng.below(3)) {
        case 0:
            return mk_cmp(CmpOp::Eq, var(x, true), int_lit(rng.range(d.lo, d.hi)));
        case 1:
            return mk_cmp(CmpOp::Eq, var(x, true), mk_add(var(x, false), int_lit(1)));
        default:
            return mk_cmp(CmpOp::Eq, var(x, true), mk_sub(var(x, false), int_lit(1)));
        }
    }

    PredPtr reset_pred() {
        if (rng.chance(25)) return pred_true();
        std::string x = pick_var();
        PredPtr first = update_for(x);
        if (model.domains.vars.size() > 1 && rng.chance(30)) {
            std::string y = pick_var();
            if (y != x) return mk_and(first, update_for(y));
        }
        return first;
    }

    void gen_domains() {
        int nvars = 1 + static_cast<int>(rng.below(params.max_vars));
        for (int i = 0; i < nvars; ++i) {
            std::string name = "x" + std::to_string(i);
            if (i > 0 && rng.chance(40)) {
                model.domains.add(name, Domain::booleans());
            } else {
                std::int64_t hi = rng.range(1, params.max_int_hi);
                model.domains.add(name, Domain::integers(0, hi));
            }
        }
        // Respect the valuation budget: shrink integer ranges first, then
        // drop trailing variables, keeping at least one.
        while (model.domains.universe_size() > params.max_universe) {
            bool shrunk = false;
            for (auto& [name, d] : model.domains.vars) {
                if (d.kind == Domain::Kind::Int && d.hi > d.lo) {
                    --d.hi;
                    shrunk = true;
                    if (model.domains.universe_size() <= params.max_universe) break;
                }
            }
            if (!shrunk) {
                if (model.domains.vars.size() <= 1) break;
                model.domains.vars.pop_back();
            }
        }
    }

    void gen_actions() {
        int n = params.hypothesis_mode ? std::max(params.num_actions, 1) : params.num_actions;
        for (int i = 0; i < n; ++i) model.actions.push_back("act" + std::to_string(i));
    }

    std::string pick_action() {
        if (!params.hypothesis_mode && rng.chance(params.tau_percent)) return kTau;
        return model.actions[rng.below(model.actions.size())];
    }

    AutomatonPtr gen_automaton(int index) {
        auto a = std::make_shared<Automaton>();
        a->name = "A" + std::to_string(index);
        int nlocs = 1 + static_cast<int>(rng.below(params.max_locations));
        for (int i = 0; i < nlocs; ++i) a->locations.push_back("L" + std::to_string(i));
        for (int i = 0; i < nlocs; ++i) {
            const std::string& loc = a->locations[i];
            if (i == 0) {
                // Keep the first location initial so the model can start.
                a->init[loc] = rng.chance(25) ? simple_pred() : pred_true();
            } else {
                a->init[loc] = rng.chance(15) ? simple_pred() : pred_false();
            }
            a->inv[loc] = rng.chance(25) ? simple_pred() : pred_true();
        }
        int nedges = static_cast<int>(rng.below(params.max_edges + 1));
        if (params.hypothesis_mode && nedges == 0) nedges = 1;
        for (int i = 0; i < nedges; ++i) {
            Edge e;
            e.src = a->locations[rng.below(a->locations.size())];
            e.dst = a->locations[rng.below(a->locations.size())];
            e.action = pick_action();
            e.reset = reset_pred();
            a->edges.push_back(std::move(e));
        }
        // The printer groups edges by source location; keep the vector in
        // that order so the model round-trips structurally.
        std::stable_sort(a->edges.begin(), a->edges.end(), [&](const Edge& x, const Edge& y) {
            auto pos = [&](const std::string& l) {
                return std::find(a->locations.begin(), a->locations.end(), l) -
                       a->locations.begin();
            };
            return pos(x.src) < pos(y.src);
        });
        if (params.hypothesis_mode) {
            a->sync_actions = {model.actions[0]};
        } else {
            int pool = std::min<int>(params.sync_pool, static_cast<int>(model.actions.size()));
            for (int i = 0; i < pool; ++i)
                if (rng.chance(40)) a->sync_actions.insert(model.actions[i]);
        }
        return a;
    }

    CompPtr gen_tree(std::size_t lo, std::size_t hi) {
        // Atoms [lo, hi) as a random binary tree, optionally σ_A-wrapped.
        CompPtr node;
        if (hi - lo == 1) {
            node = Comp::mk_atom(model.automata[lo]);
        } else {
            std::size_t mid = lo + 1 + rng.below(hi - lo - 1);
            CompPtr l = gen_tree(lo, mid);
            CompPtr r = gen_tree(mid, hi);
            node = Comp::mk_par(l, r);
        }
        if (!params.hypothesis_mode && params.allow_sync_ops && rng.chance(25)) {
            std::set<std::string> s;
            int pool = std::min<int>(params.sync_pool, static_cast<int>(model.actions.size()));
            for (int i = 0; i < pool; ++i)
                if (rng.chance(50)) s.insert(model.actions[i]);
            if (!s.empty()) node = Comp::mk_sync(s, node);
        }
        return node;
    }

    Model run() {
        gen_domains();
        gen_actions();
        int n = params.min_automata +
                static_cast<int>(rng.below(params.max_automata - params.min_automata + 1));
        for (int i = 0; i < n; ++i) model.automata.push_back(gen_automaton(i));
        if (params.hypothesis_mode) {
            CompPtr c = Comp::mk_atom(model.automata[0]);
            for (int i = 1; i < n; ++i) c = Comp::mk_par(c, Comp::mk_atom(model.automata[i]));
            model.composition = c;
        } else {
            model.composition = gen_tree(0, model.automata.size());
        }
        model.composition_name = "Main";
        return std::move(model);
    }
};

} // namespace

Model generate_model(std::uint64_t seed, const GenParams& params) {
    return Gen(seed, params).run();
}

} // namespace ciflin
