#include "ciflin/linear.hpp"

#include "ciflin/errors.hpp"

#include <map>

namespace ciflin {

std::string linear_state_to_string(const LinearState& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += s[i] ? *s[i] : "_";
    }
    return out + "]";
}

bool subseq(const LinearState& x, const std::vector<std::string>& y) {
    if (x.size() > y.size()) throw ModelError("subseq: first sequence is longer");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] && *x[i] != y[i]) return false;
    return true;
}

std::vector<std::string> overwrite(const LinearState& x, const std::vector<std::string>& y) {
    if (x.size() > y.size()) throw ModelError("overwrite: first sequence is longer");
    std::vector<std::string> out = y;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) out[i] = *x[i];
    return out;
}

LitsStatic lits_static(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom: {
        LitsStatic s;
        s.sync_actions = p->atom->sync_actions;
        s.init_funcs = {p->atom->init};
        s.inv_funcs = {p->atom->inv};
        s.wildcard_count = 1;
        s.automata = {p->atom};
        return s;
    }
    case Comp::Kind::Par: {
        LitsStatic l = lits_static(p->left);
        LitsStatic r = lits_static(p->right);
        LitsStatic s;
        s.sync_actions = l.sync_actions;
        s.sync_actions.insert(r.sync_actions.begin(), r.sync_actions.end());
        s.init_funcs = std::move(l.init_funcs);
        s.init_funcs.insert(s.init_funcs.end(), r.init_funcs.begin(), r.init_funcs.end());
        s.inv_funcs = std::move(l.inv_funcs);
        s.inv_funcs.insert(s.inv_funcs.end(), r.inv_funcs.begin(), r.inv_funcs.end());
        s.wildcard_count = l.wildcard_count + r.wildcard_count;
        s.automata = std::move(l.automata);
        s.automata.insert(s.automata.end(), r.automata.begin(), r.automata.end());
        return s;
    }
    case Comp::Kind::Sync: {
        LitsStatic s = lits_static(p->child);
        s.sync_actions.insert(p->sync_set.begin(), p->sync_set.end());
        return s;
    }
    }
    throw ModelError("corrupt composition");
}

namespace {

LinearState wildcards(std::size_t n) { return LinearState(n, std::nullopt); }

LinearState concat_states(const LinearState& a, const LinearState& b) {
    LinearState out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

std::vector<LitsTransition> lits_action_transitions(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom: {
        std::vector<LitsTransition> out;
        for (const auto& e : p->atom->edges) {
            LitsTransition t;
            t.source = {e.src};
            t.action = e.action;
            t.reset = Conj::from(e.reset);
            t.target = {e.dst};
            out.push_back(std::move(t));
        }
        return out;
    }
    case Comp::Kind::Par: {
        std::vector<LitsTransition> ls = lits_action_transitions(p->left);
        std::vector<LitsTransition> rs = lits_action_transitions(p->right);
        std::set<std::string> la = lits_static(p->left).sync_actions;
        std::set<std::string> ra = lits_static(p->right).sync_actions;
        std::size_t ln = automata_of(p->left).size();
        std::size_t rn = automata_of(p->right).size();

        std::vector<LitsTransition> out;
        // Interleaving: the passive side is padded with its wild-card list
        // on both the source and the target.
        for (const auto& t : ls) {
            if (ra.count(t.action)) continue;
            LitsTransition c;
            c.source = concat_states(t.source, wildcards(rn));
            c.action = t.action;
            c.reset = t.reset;
            c.target = concat_states(t.target, wildcards(rn));
            out.push_back(std::move(c));
        }
        for (const auto& t : rs) {
            if (la.count(t.action)) continue;
            LitsTransition c;
            c.source = concat_states(wildcards(ln), t.source);
            c.action = t.action;
            c.reset = t.reset;
            c.target = concat_states(wildcards(ln), t.target);
            out.push_back(std::move(c));
        }
        // Synchronization on a ∈ A_p ∩ A_q, reset r_p ∧ r_q.
        for (const auto& lt : ls) {
            if (!la.count(lt.action) || !ra.count(lt.action)) continue;
            for (const auto& rt : rs) {
                if (rt.action != lt.action) continue;
                LitsTransition c;
                c.source = concat_states(lt.source, rt.source);
                c.action = lt.action;
                c.reset = lt.reset.then(rt.reset);
                c.target = concat_states(lt.target, rt.target);
                out.push_back(std::move(c));
            }
        }
        return out;
    }
    case Comp::Kind::Sync:
        // σ_A leaves action transitions untouched.
        return lits_action_transitions(p->child);
    }
    throw ModelError("corrupt composition");
}

Lits build_lits(const CompPtr& p) {
    Lits l;
    l.composition = p;
    l.statics = lits_static(p);
    l.transitions = lits_action_transitions(p);
    return l;
}

SizePrediction predict_size(const CompPtr& p, const std::string& action) {
    SizePrediction out;
    // Hypothesis: a parallel composition of automata (no sync operators)
    // whose sync sets are all exactly {action}.
    std::vector<CompPtr> stack{p};
    while (!stack.empty()) {
        CompPtr q = stack.back();
        stack.pop_back();
        switch (q->kind) {
        case Comp::Kind::Atom:
            if (q->atom->sync_actions != std::set<std::string>{action}) {
                out.reason = "automaton '" + q->atom->name +
                             "' must have exactly {" + action + "} as its sync set";
                return out;
            }
            break;
        case Comp::Kind::Par:
            stack.push_back(q->left);
            stack.push_back(q->right);
            break;
        case Comp::Kind::Sync:
            out.reason = "composition contains a sync operator";
            return out;
        }
    }
    std::size_t sum = 0, prod = 1;
    for (const auto& a : automata_of(p)) {
        std::size_t with = 0, without = 0;
        for (const auto& e : a->edges) (e.action == action ? with : without)++;
        sum += without;
        prod *= with;
    }
    out.hypothesis_ok = true;
    out.predicted = sum + prod;
    return out;
}

TransitionSystem lits_to_ts(const Lits& lits) {
    TransitionSystem ts;
    std::map<std::string, std::size_t> index;
    auto intern = [&](const LinearState& s) {
        std::string key = linear_state_to_string(s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = ts.states.size();
        ts.states.push_back(key);
        index.emplace(key, id);
        return id;
    };
    for (const auto& t : lits.transitions) {
        std::size_t src = intern(t.source);
        std::size_t dst = intern(t.target);
        ts.edges.push_back({src, dst, t.action + ", " + t.reset.to_string(), false});
    }
    return ts;
}

} // namespace ciflin
