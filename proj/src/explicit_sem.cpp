#include "ciflin/explicit_sem.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <tuple>

namespace ciflin {

namespace {

EvalEnv env_of(const Valuation& sigma) {
    EvalEnv env;
    for (const auto& [name, v] : sigma) env.emplace(VarRef{name, false}, v);
    return env;
}

EvalEnv env_of_reset(const Valuation& sigma, const Valuation& sigma_prime) {
    EvalEnv env = env_of(sigma);
    for (const auto& [name, v] : sigma_prime) env.emplace(VarRef{name, true}, v);
    return env;
}

} // namespace

bool satisfies(const Valuation& sigma, const PredPtr& p) {
    return eval_pred(p, env_of(sigma));
}

bool satisfies_reset(const Valuation& sigma, const Valuation& sigma_prime, const PredPtr& r) {
    return eval_pred(r, env_of_reset(sigma, sigma_prime));
}

namespace {

using ActKey = std::tuple<std::string, bool, std::string, Valuation>;
using EnvKey = std::tuple<std::set<std::string>, std::string, Valuation>;

struct StepSets {
    std::map<ActKey, ActionStep> actions;
    std::map<EnvKey, EnvStep> envs;
};

void add_action(StepSets& out, ActionStep s) {
    ActKey k{s.action, s.sync, term_key(s.target), s.after};
    out.actions.emplace(std::move(k), std::move(s));
}

void add_env(StepSets& out, EnvStep s) {
    EnvKey k{s.sync_actions, term_key(s.target), s.after};
    out.envs.emplace(std::move(k), std::move(s));
}

// Plain variables whose primed form occurs in the reset.
std::vector<std::string> reset_targets(const PredPtr& r) {
    std::vector<std::string> out;
    for (const auto& v : free_vars(r))
        if (v.primed) out.push_back(v.name);
    return out;
}

// All σ' agreeing with σ outside `vary`, with varied values drawn from d.
std::vector<Valuation> frame_successors(const Valuation& sigma,
                                        const std::vector<std::string>& vary,
                                        const DomainSpec& d) {
    std::vector<std::vector<Value>> columns;
    columns.reserve(vary.size());
    for (const auto& name : vary) {
        const Domain* dom = d.find(name);
        if (!dom) throw ModelError("no domain for variable '" + name + "'");
        columns.push_back(dom->enumerate());
    }
    std::vector<Valuation> out;
    std::vector<std::size_t> idx(vary.size(), 0);
    while (true) {
        Valuation v = sigma;
        for (std::size_t i = 0; i < vary.size(); ++i) v[vary[i]] = columns[i][idx[i]];
        out.push_back(std::move(v));
        std::size_t i = vary.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < columns[i].size()) { done = false; break; }
            idx[i] = 0;
        }
        if (done) return out;
    }
}

// A composite action step before valuations: one slot per automaton, in
// composition order. Acting slots carry the edge they take, passive slots
// the location their env step rests in. The one shared σ' then varies
// exactly the acting resets' primed variables (the frame condition of the
// conjoined reset) and must satisfy every acting reset, every acting
// target invariant and every passive invariant; the literal per-atom rules
// agree wherever they compose at all.
struct ActSlot {
    const Automaton* atom;
    bool acting;
    const Edge* edge;   // acting
    std::string loc;    // acting: edge target; passive: chosen location
};

struct ActTemplate {
    std::string action;
    bool sync = false;
    std::vector<ActSlot> slots;
};

// A composite env step: one location choice per automaton plus the
// sync-action label, which is the subtree's whole sync set.
struct EnvTemplate {
    std::vector<const Automaton*> atoms;
    std::vector<std::string> locs;
};

struct Templates {
    std::vector<ActTemplate> acts;
    std::vector<EnvTemplate> envs;
    std::set<std::string> sync_set;  // the ⇝A label of every env step
};

Templates comp_templates(const CompPtr& p) {
    switch (p->kind) {
    case Comp::Kind::Atom: {
        const Automaton* a = p->atom.get();
        Templates out;
        out.sync_set = a->sync_actions;
        for (const auto& e : a->edges) {
            ActTemplate t;
            t.action = e.action;
            t.sync = a->sync_actions.count(e.action) > 0;
            t.slots.push_back({a, true, &e, e.dst});
            out.acts.push_back(std::move(t));
        }
        for (const auto& v : a->locations) out.envs.push_back({{a}, {v}});
        return out;
    }
    case Comp::Kind::Par: {
        Templates l = comp_templates(p->left);
        Templates r = comp_templates(p->right);
        Templates out;
        out.sync_set = l.sync_set;
        out.sync_set.insert(r.sync_set.begin(), r.sync_set.end());

        auto passive_slots = [](const EnvTemplate& e) {
            std::vector<ActSlot> slots;
            for (std::size_t i = 0; i < e.atoms.size(); ++i)
                slots.push_back({e.atoms[i], false, nullptr, e.locs[i]});
            return slots;
        };
        // Interleaving: the action is not synchronizing on the passive side.
        for (const auto& t : l.acts) {
            if (r.sync_set.count(t.action)) continue;
            for (const auto& e : r.envs) {
                ActTemplate c;
                c.action = t.action;
                c.sync = t.sync;
                c.slots = t.slots;
                auto ps = passive_slots(e);
                c.slots.insert(c.slots.end(), ps.begin(), ps.end());
                out.acts.push_back(std::move(c));
            }
        }
        for (const auto& t : r.acts) {
            if (l.sync_set.count(t.action)) continue;
            for (const auto& e : l.envs) {
                ActTemplate c;
                c.action = t.action;
                c.sync = t.sync;
                c.slots = passive_slots(e);
                c.slots.insert(c.slots.end(), t.slots.begin(), t.slots.end());
                out.acts.push_back(std::move(c));
            }
        }
        // Synchronization: marked synchronizing on both sides.
        for (const auto& lt : l.acts) {
            if (!lt.sync) continue;
            for (const auto& rt : r.acts) {
                if (!rt.sync || rt.action != lt.action) continue;
                ActTemplate c;
                c.action = lt.action;
                c.sync = true;
                c.slots = lt.slots;
                c.slots.insert(c.slots.end(), rt.slots.begin(), rt.slots.end());
                out.acts.push_back(std::move(c));
            }
        }
        for (const auto& le : l.envs) {
            for (const auto& re : r.envs) {
                EnvTemplate c;
                c.atoms = le.atoms;
                c.atoms.insert(c.atoms.end(), re.atoms.begin(), re.atoms.end());
                c.locs = le.locs;
                c.locs.insert(c.locs.end(), re.locs.begin(), re.locs.end());
                out.envs.push_back(std::move(c));
            }
        }
        return out;
    }
    case Comp::Kind::Sync: {
        Templates out = comp_templates(p->child);
        for (auto& t : out.acts) t.sync = t.sync || p->sync_set.count(t.action) > 0;
        out.sync_set.insert(p->sync_set.begin(), p->sync_set.end());
        return out;
    }
    }
    throw ModelError("corrupt composition");
}

class Stepper {
public:
    StepSets steps(const TermPtr& t, const Valuation& sigma, const DomainSpec& d,
                   bool want_actions, bool want_envs) {
        if (t->kind == Term::Kind::Comp)
            return comp_steps(t->comp, sigma, d, want_actions, want_envs);
        return scope_steps(t, sigma, d, want_actions, want_envs);
    }

private:
    StepSets comp_steps(const CompPtr& p, const Valuation& sigma, const DomainSpec& d,
                        bool want_actions, bool want_envs) {
        Templates ts = comp_templates(p);
        StepSets out;

        if (want_actions) {
            for (const auto& t : ts.acts) {
                bool enabled = true;
                for (const auto& s : t.slots) {
                    const std::string& at = s.acting ? s.edge->src : s.loc;
                    if (!satisfies(sigma, s.atom->init_of(at)) ||
                        !satisfies(sigma, s.atom->inv_of(at))) {
                        enabled = false;
                        break;
                    }
                }
                if (!enabled) continue;

                std::vector<std::string> vary;
                for (const auto& s : t.slots) {
                    if (!s.acting) continue;
                    for (const auto& name : reset_targets(s.edge->reset))
                        vary.push_back(name);
                }
                std::sort(vary.begin(), vary.end());
                vary.erase(std::unique(vary.begin(), vary.end()), vary.end());

                std::vector<std::string> target_locs;
                for (const auto& s : t.slots) target_locs.push_back(s.loc);

                for (auto& sp : frame_successors(sigma, vary, d)) {
                    bool ok = true;
                    for (const auto& s : t.slots) {
                        if (s.acting && !satisfies_reset(sigma, sp, s.edge->reset)) {
                            ok = false;
                            break;
                        }
                        if (!satisfies(sp, s.atom->inv_of(s.loc))) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    ActionStep step;
                    step.action = t.action;
                    step.sync = t.sync;
                    step.target = Term::of(reinit(p, target_locs));
                    step.after = sp;
                    add_action(out, std::move(step));
                }
            }
        }

        if (want_envs) {
            std::vector<Valuation> universe = enumerate_valuations(d);
            for (const auto& t : ts.envs) {
                bool enabled = true;
                for (std::size_t i = 0; i < t.atoms.size(); ++i) {
                    if (!satisfies(sigma, t.atoms[i]->init_of(t.locs[i])) ||
                        !satisfies(sigma, t.atoms[i]->inv_of(t.locs[i]))) {
                        enabled = false;
                        break;
                    }
                }
                if (!enabled) continue;
                TermPtr target = Term::of(reinit(p, t.locs));
                for (const auto& sp : universe) {
                    bool ok = true;
                    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
                        if (!satisfies(sp, t.atoms[i]->inv_of(t.locs[i]))) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    EnvStep step;
                    step.sync_actions = ts.sync_set;
                    step.target = target;
                    step.after = sp;
                    add_env(out, std::move(step));
                }
            }
        }
        return out;
    }

    StepSets scope_steps(const TermPtr& t, const Valuation& sigma, const DomainSpec& d,
                         bool want_actions, bool want_envs) {
        // ⊥-initialized bindings quantify over every initial binding vector.
        std::vector<std::size_t> undefined;
        for (std::size_t i = 0; i < t->bindings.size(); ++i)
            if (!t->bindings[i].value) undefined.push_back(i);
        if (!undefined.empty()) {
            StepSets out;
            std::vector<std::vector<Value>> columns;
            for (std::size_t i : undefined) columns.push_back(t->bindings[i].domain.enumerate());
            std::vector<std::size_t> idx(undefined.size(), 0);
            while (true) {
                std::vector<ScopeBinding> concrete = t->bindings;
                for (std::size_t i = 0; i < undefined.size(); ++i)
                    concrete[undefined[i]].value = columns[i][idx[i]];
                StepSets sub = scope_concrete_steps(concrete, t->body, sigma, d, want_actions,
                                                    want_envs);
                for (auto& [k, s] : sub.actions) out.actions.emplace(k, std::move(s));
                for (auto& [k, s] : sub.envs) out.envs.emplace(k, std::move(s));
                std::size_t i = undefined.size();
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++idx[i] < columns[i].size()) { done = false; break; }
                    idx[i] = 0;
                }
                if (done) return out;
            }
        }
        return scope_concrete_steps(t->bindings, t->body, sigma, d, want_actions, want_envs);
    }

    StepSets scope_concrete_steps(const std::vector<ScopeBinding>& bindings, const TermPtr& body,
                                  const Valuation& sigma, const DomainSpec& d, bool want_actions,
                                  bool want_envs) {
        Valuation inner_sigma = sigma;
        for (const auto& b : bindings) {
            if (inner_sigma.count(b.var))
                throw ModelError("scope binding '" + b.var + "' shadows a variable in scope");
            inner_sigma.emplace(b.var, *b.value);
        }

        StepSets out;
        if (want_actions) {
            // Action steps may move the scoped variables via resets; they
            // range over their full domains. The new binding is read back
            // from the inner successor valuation.
            DomainSpec d_act = d;
            for (const auto& b : bindings) d_act.add(b.var, b.domain);
            StepSets inner = steps(body, inner_sigma, d_act, true, false);
            for (const auto& [k, s] : inner.actions) {
                std::vector<ScopeBinding> nb = bindings;
                Valuation outer_after = s.after;
                for (auto& b : nb) {
                    auto it = outer_after.find(b.var);
                    assert(it != outer_after.end());
                    b.value = it->second;
                    outer_after.erase(it);
                }
                ActionStep c;
                c.action = s.action;
                c.sync = s.sync;
                c.target = Term::scope(std::move(nb), s.target);
                c.after = std::move(outer_after);
                add_action(out, std::move(c));
            }
        }
        if (want_envs) {
            // The environment cannot modify scoped variables: their inner
            // domains are pinned to the current binding.
            DomainSpec d_env = d;
            for (const auto& b : bindings) d_env.add(b.var, Domain::singleton(*b.value));
            StepSets inner = steps(body, inner_sigma, d_env, false, true);
            for (const auto& [k, s] : inner.envs) {
                Valuation outer_after = s.after;
                for (const auto& b : bindings) {
                    auto it = outer_after.find(b.var);
                    assert(it != outer_after.end() && it->second == *b.value);
                    outer_after.erase(it);
                }
                EnvStep c;
                c.sync_actions = s.sync_actions;
                c.target = Term::scope(bindings, s.target);
                c.after = std::move(outer_after);
                add_env(out, std::move(c));
            }
        }
        return out;
    }
};

} // namespace

std::vector<Valuation> reset_successors(const Valuation& sigma, const PredPtr& r,
                                        const DomainSpec& d) {
    return frame_successors(sigma, reset_targets(r), d);
}

std::vector<ActionStep> action_steps(const TermPtr& t, const Valuation& sigma,
                                     const DomainSpec& d) {
    StepSets s = Stepper().steps(t, sigma, d, true, false);
    std::vector<ActionStep> out;
    out.reserve(s.actions.size());
    for (auto& [k, step] : s.actions) out.push_back(std::move(step));
    return out;
}

std::vector<EnvStep> env_steps(const TermPtr& t, const Valuation& sigma, const DomainSpec& d) {
    StepSets s = Stepper().steps(t, sigma, d, false, true);
    std::vector<EnvStep> out;
    out.reserve(s.envs.size());
    for (auto& [k, step] : s.envs) out.push_back(std::move(step));
    return out;
}

namespace {

DomainSpec pin_all(const DomainSpec& d, const Valuation& sigma) {
    DomainSpec out;
    for (const auto& [name, dom] : d.vars) {
        auto it = sigma.find(name);
        if (it == sigma.end()) throw ModelError("valuation misses variable '" + name + "'");
        out.add(name, Domain::singleton(it->second));
    }
    return out;
}

} // namespace

std::vector<Valuation> initial_valuations(const TermPtr& t, const DomainSpec& d) {
    std::vector<Valuation> out;
    for (auto& sigma : enumerate_valuations(d)) {
        // Pinning every domain to σ turns env enumeration into the pure
        // existence check "some env step with σ' = σ", which is equivalent
        // to "some env step at all" (σ' = σ always qualifies).
        if (!env_steps(t, sigma, pin_all(d, sigma)).empty()) out.push_back(std::move(sigma));
    }
    return out;
}

ExplicitLts build_explicit_lts(const TermPtr& t, const std::vector<Valuation>& initial,
                               const DomainSpec& d, std::size_t bound) {
    ExplicitLts lts;
    std::map<std::pair<std::string, Valuation>, std::size_t> index;
    std::deque<std::size_t> work;

    auto intern = [&](const TermPtr& term, const Valuation& v) -> std::optional<std::size_t> {
        std::pair<std::string, Valuation> key{term_key(term), v};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (lts.states.size() >= bound) {
            lts.truncated = true;
            return std::nullopt;
        }
        std::size_t id = lts.states.size();
        lts.states.push_back({term, v});
        index.emplace(std::move(key), id);
        work.push_back(id);
        return id;
    };

    for (const auto& v : initial) {
        if (auto id = intern(t, v)) lts.initial.push_back(*id);
    }

    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        TermPtr term = lts.states[id].term;
        Valuation sigma = lts.states[id].valuation;
        for (const auto& s : action_steps(term, sigma, d)) {
            if (auto dst = intern(s.target, s.after))
                lts.action_edges.push_back({id, *dst, s.action, s.sync});
        }
        for (const auto& s : env_steps(term, sigma, d)) {
            if (auto dst = intern(s.target, s.after))
                lts.env_edges.push_back({id, *dst, s.sync_actions});
        }
    }
    return lts;
}

TransitionSystem explicit_lts(const TermPtr& t, const std::vector<Valuation>& initial,
                              const DomainSpec& d, std::size_t bound) {
    ExplicitLts lts = build_explicit_lts(t, initial, d, bound);
    TransitionSystem ts;
    ts.truncated = lts.truncated;
    for (const auto& s : lts.states)
        ts.states.push_back(term_to_string(s.term) + " @ " + to_string(s.valuation));
    for (const auto& e : lts.action_edges) {
        std::string label = e.action;
        if (e.sync) label += " [sync]";
        ts.edges.push_back({e.src, e.dst, label, false});
    }
    for (const auto& e : lts.env_edges) {
        std::string label = "{";
        bool first = true;
        for (const auto& a : e.sync_actions) {
            if (!first) label += ", ";
            first = false;
            label += a;
        }
        label += "}";
        ts.edges.push_back({e.src, e.dst, label, true});
    }
    if (!lts.initial.empty()) ts.root = lts.initial.front();
    return ts;
}

} // namespace ciflin
