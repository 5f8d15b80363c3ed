#include "ciflin/symbolic.hpp"

#include "ciflin/errors.hpp"

#include <deque>
#include <map>

namespace ciflin {

namespace {

struct PartialAct {
    std::string action;
    bool sync = false;
    Conj u, n, n_prime, r;
    std::vector<std::string> locs;
};

struct PartialEnv {
    Conj u, n;
    std::set<std::string> sync_actions;
    std::vector<std::string> locs;
};

struct Partials {
    std::vector<PartialAct> actions;
    std::vector<PartialEnv> envs;
};

std::vector<std::string> concat_locs(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Partials derive(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom: {
        const Automaton& a = *p->atom;
        Partials out;
        for (const auto& e : a.edges) {
            PartialAct t;
            t.action = e.action;
            t.sync = a.sync_actions.count(e.action) > 0;
            t.u = Conj::from(a.init_of(e.src));
            t.n = Conj::from(a.inv_of(e.src));
            t.n_prime = Conj::from(a.inv_of(e.dst));
            t.r = Conj::from(e.reset);
            t.locs = {e.dst};
            out.actions.push_back(std::move(t));
        }
        for (const auto& v : a.locations) {
            PartialEnv t;
            t.u = Conj::from(a.init_of(v));
            t.n = Conj::from(a.inv_of(v));
            t.sync_actions = a.sync_actions;
            t.locs = {v};
            out.envs.push_back(std::move(t));
        }
        return out;
    }
    case Comp::Kind::Par: {
        Partials ls = derive(p->left);
        Partials rs = derive(p->right);
        Partials out;
        // Interleaving, acting side left; label conjunctions are built in
        // component order (left operand first), both mirrors alike.
        for (const auto& la : ls.actions) {
            for (const auto& re : rs.envs) {
                if (re.sync_actions.count(la.action)) continue;
                PartialAct t;
                t.action = la.action;
                t.sync = la.sync;
                t.u = la.u.then(re.u);
                t.n = la.n.then(re.n);
                t.n_prime = la.n_prime.then(re.n);
                t.r = la.r;
                t.locs = concat_locs(la.locs, re.locs);
                out.actions.push_back(std::move(t));
            }
        }
        // Mirror: acting side right.
        for (const auto& ra : rs.actions) {
            for (const auto& le : ls.envs) {
                if (le.sync_actions.count(ra.action)) continue;
                PartialAct t;
                t.action = ra.action;
                t.sync = ra.sync;
                t.u = le.u.then(ra.u);
                t.n = le.n.then(ra.n);
                t.n_prime = le.n.then(ra.n_prime);
                t.r = ra.r;
                t.locs = concat_locs(le.locs, ra.locs);
                out.actions.push_back(std::move(t));
            }
        }
        // Synchronization: marked synchronizing on both sides.
        for (const auto& la : ls.actions) {
            if (!la.sync) continue;
            for (const auto& ra : rs.actions) {
                if (!ra.sync || ra.action != la.action) continue;
                PartialAct t;
                t.action = la.action;
                t.sync = true;
                t.u = la.u.then(ra.u);
                t.n = la.n.then(ra.n);
                t.n_prime = la.n_prime.then(ra.n_prime);
                t.r = la.r.then(ra.r);
                t.locs = concat_locs(la.locs, ra.locs);
                out.actions.push_back(std::move(t));
            }
        }
        for (const auto& le : ls.envs) {
            for (const auto& re : rs.envs) {
                PartialEnv t;
                t.u = le.u.then(re.u);
                t.n = le.n.then(re.n);
                t.sync_actions = le.sync_actions;
                t.sync_actions.insert(re.sync_actions.begin(), re.sync_actions.end());
                t.locs = concat_locs(le.locs, re.locs);
                out.envs.push_back(std::move(t));
            }
        }
        return out;
    }
    case Comp::Kind::Sync: {
        Partials inner = derive(p->child);
        for (auto& t : inner.actions) t.sync = t.sync || p->sync_set.count(t.action) > 0;
        for (auto& t : inner.envs)
            t.sync_actions.insert(p->sync_set.begin(), p->sync_set.end());
        return inner;
    }
    }
    throw ModelError("corrupt composition");
}

} // namespace

std::vector<SymbolicActionTransition> symbolic_action_transitions(const CompPtr& p) {
    Partials ps = derive(p);
    std::vector<SymbolicActionTransition> out;
    out.reserve(ps.actions.size());
    for (auto& t : ps.actions) {
        SymbolicActionTransition s;
        s.source = p;
        s.action = std::move(t.action);
        s.sync = t.sync;
        s.u = std::move(t.u);
        s.n = std::move(t.n);
        s.n_prime = std::move(t.n_prime);
        s.r = std::move(t.r);
        s.target = reinit(p, t.locs);
        s.target_locs = std::move(t.locs);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<SymbolicEnvTransition> symbolic_env_transitions(const CompPtr& p) {
    Partials ps = derive(p);
    std::vector<SymbolicEnvTransition> out;
    out.reserve(ps.envs.size());
    for (auto& t : ps.envs) {
        SymbolicEnvTransition s;
        s.source = p;
        s.u = std::move(t.u);
        s.n = std::move(t.n);
        s.sync_actions = std::move(t.sync_actions);
        s.target = reinit(p, t.locs);
        s.target_locs = std::move(t.locs);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::vector<std::string>> locsof(const CompPtr& p) {
    std::vector<AutomatonPtr> autos = automata_of(p);
    std::vector<std::vector<std::string>> out;
    std::vector<std::size_t> idx(autos.size(), 0);
    while (true) {
        std::vector<std::string> seq;
        seq.reserve(autos.size());
        for (std::size_t i = 0; i < autos.size(); ++i)
            seq.push_back(autos[i]->locations[idx[i]]);
        out.push_back(std::move(seq));
        std::size_t i = autos.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < autos[i]->locations.size()) { done = false; break; }
            idx[i] = 0;
        }
        if (done) return out;
    }
}

std::string Sts::state_display(std::size_t i) const {
    if (!state_locs[i]) return "<" + comp_to_string(states[i]) + ">";
    std::string out = "<";
    const auto& locs = *state_locs[i];
    for (std::size_t k = 0; k < locs.size(); ++k) {
        if (k > 0) out += ",";
        out += locs[k];
    }
    return out + ">";
}

Sts build_sts(const CompPtr& p, bool prune) {
    Sts sts;
    sts.root = p;
    sts.pruned = prune;
    sts.states.push_back(p);
    sts.state_locs.push_back(std::nullopt);

    std::map<std::vector<std::string>, std::size_t> index;
    std::deque<std::size_t> work{0};

    auto intern = [&](const std::vector<std::string>& locs, const CompPtr& target) {
        auto it = index.find(locs);
        if (it != index.end()) return it->second;
        std::size_t id = sts.states.size();
        sts.states.push_back(target);
        sts.state_locs.push_back(locs);
        index.emplace(locs, id);
        work.push_back(id);
        return id;
    };

    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        CompPtr q = sts.states[id];
        for (auto& t : symbolic_action_transitions(q)) {
            if (prune && t.u.has_false_conjunct()) continue;
            std::size_t dst = intern(t.target_locs, t.target);
            sts.action_edges.push_back(
                {id, dst, t.action, t.sync, t.u, t.n, t.n_prime, t.r});
        }
        for (auto& t : symbolic_env_transitions(q)) {
            if (prune && t.u.has_false_conjunct()) continue;
            std::size_t dst = intern(t.target_locs, t.target);
            sts.env_edges.push_back({id, dst, t.u, t.n, t.sync_actions});
        }
    }
    return sts;
}

TransitionSystem sts_to_ts(const Sts& sts) {
    TransitionSystem ts;
    for (std::size_t i = 0; i < sts.states.size(); ++i)
        ts.states.push_back(sts.state_display(i));
    for (const auto& e : sts.action_edges) {
        std::string label = e.action + (e.sync ? " [sync]" : "") + "\\nu: " + e.u.to_string() +
                            "\\nr: " + e.r.to_string() + "\\nn: " + e.n.to_string() +
                            "\\nn': " + e.n_prime.to_string();
        ts.edges.push_back({e.src, e.dst, label, false});
    }
    for (const auto& e : sts.env_edges) {
        std::string acts = "{";
        bool first = true;
        for (const auto& a : e.sync_actions) {
            if (!first) acts += ", ";
            first = false;
            acts += a;
        }
        acts += "}";
        ts.edges.push_back(
            {e.src, e.dst, e.u.to_string() + ", " + e.n.to_string() + ", " + acts, true});
    }
    return ts;
}

} // namespace ciflin
