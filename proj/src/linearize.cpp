#include "ciflin/linearize.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>

namespace ciflin {

std::vector<std::string> fresh_pointers(const CompPtr& p, const Model& context) {
    std::set<std::string> taken = comp_var_names(p);
    for (const auto& [name, d] : context.domains.vars) taken.insert(name);
    std::size_t need = automata_of(p).size();
    std::vector<std::string> out;
    for (std::size_t i = 0; out.size() < need; ++i) {
        std::string cand = "l" + std::to_string(i);
        if (taken.count(cand)) continue;
        out.push_back(cand);
    }
    return out;
}

namespace {

ExprPtr pointer_expr(const std::string& name, bool primed) {
    return mk_var(VarRef{name, primed});
}

ExprPtr loc_literal(const std::string& loc) { return mk_literal(Value::location(loc)); }

PredPtr ptr_eq(const std::string& ptr, bool primed, const std::string& loc) {
    return mk_cmp(CmpOp::Eq, pointer_expr(ptr, primed), loc_literal(loc));
}

// (ℓ = v ⇒ q) in the implication-free grammar: the disjunction of ℓ = v'
// over every other location v', or q. With a singleton location set the
// implication collapses to q.
PredPtr implies_at(const std::string& ptr, const std::string& loc,
                   const std::vector<std::string>& all_locs, const PredPtr& body) {
    std::vector<PredPtr> others;
    for (const auto& v : all_locs)
        if (v != loc) others.push_back(ptr_eq(ptr, false, v));
    if (others.empty()) return body;
    return mk_or(disjoin(others), body);
}

std::string fresh_location_name(const Model& context) {
    std::set<std::string> taken = context.location_universe();
    if (!taken.count("X")) return "X";
    for (std::size_t i = 0;; ++i) {
        std::string cand = "X" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

} // namespace

LinearizationResult linearize(const CompPtr& p, const Model& context) {
    LinearizationResult res;
    res.lits = build_lits(p);
    res.pointers = fresh_pointers(p, context);
    res.location = fresh_location_name(context);

    const LitsStatic& st = res.lits.statics;
    std::size_t n = st.automata.size();
    for (std::size_t i = 0; i < n; ++i)
        res.pointer_domains.emplace_back(res.pointers[i],
                                         Domain::location_set(st.automata[i]->locations));

    // init(x): per automaton, one implication per location, then the
    // membership conjuncts that force the choice of an initial location.
    std::vector<PredPtr> init_parts;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& locs = st.automata[i]->locations;
        for (const auto& v : locs)
            init_parts.push_back(implies_at(res.pointers[i], v, locs, st.init_funcs[i].at(v)));
    }
    for (std::size_t i = 0; i < n; ++i)
        init_parts.push_back(mk_member(VarRef{res.pointers[i], false},
                                       st.automata[i]->locations));
    PredPtr init_x = conjoin(init_parts);

    // inv(x): the same implications over the invariant functions.
    std::vector<PredPtr> inv_parts;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& locs = st.automata[i]->locations;
        for (const auto& v : locs)
            inv_parts.push_back(implies_at(res.pointers[i], v, locs, st.inv_funcs[i].at(v)));
    }
    PredPtr inv_x = conjoin(inv_parts);

    // One self-loop per LiTS action transition; the reset keeps the data
    // part first, then per non-wild-card position the pointer guard and
    // update conjuncts in ascending automaton order.
    auto automaton = std::make_shared<Automaton>();
    automaton->name = context.composition_name + "_linear";
    automaton->locations = {res.location};
    automaton->init[res.location] = init_x;
    automaton->inv[res.location] = inv_x;
    automaton->sync_actions = st.sync_actions;
    for (const auto& t : res.lits.transitions) {
        std::vector<PredPtr> parts = t.reset.items();
        for (std::size_t i = 0; i < n; ++i) {
            if (!t.source[i]) continue;
            parts.push_back(ptr_eq(res.pointers[i], false, *t.source[i]));
            parts.push_back(ptr_eq(res.pointers[i], true, *t.target[i]));
        }
        Edge e;
        e.src = res.location;
        e.action = t.action;
        e.reset = conjoin(parts);
        e.dst = res.location;
        automaton->edges.push_back(std::move(e));
    }
    res.automaton = automaton;
    return res;
}

TermPtr scope_linearized(const LinearizationResult& res) {
    std::vector<ScopeBinding> bindings;
    for (std::size_t i = 0; i < res.pointers.size(); ++i)
        bindings.push_back({res.pointers[i], std::nullopt, res.pointer_domains[i].second});
    return Term::scope(std::move(bindings), Term::of(Comp::mk_atom(res.automaton)));
}

Model linearized_model(const LinearizationResult& res, const Model& context, bool simplify) {
    Model m;
    m.domains = context.domains;
    for (const auto& [name, d] : res.pointer_domains) m.domains.add(name, d);
    m.actions = context.actions;
    AutomatonPtr a = res.automaton;
    if (simplify) {
        auto copy = std::make_shared<Automaton>(*a);
        for (auto& [loc, pred] : copy->init) pred = simplify_pred(pred);
        for (auto& [loc, pred] : copy->inv) pred = simplify_pred(pred);
        for (auto& e : copy->edges) e.reset = simplify_pred(e.reset);
        a = copy;
    }
    m.automata = {a};
    m.composition_name = context.composition_name;
    m.composition = Comp::mk_atom(a);
    return m;
}

} // namespace ciflin
