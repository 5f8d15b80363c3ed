#include "ciflin/verify.hpp"

#include "ciflin/errors.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>

namespace ciflin {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string set_str(const std::set<std::string>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : s) {
        if (!first) out += ",";
        first = false;
        out += a;
    }
    return out + "}";
}

std::string locs_str(const std::vector<std::string>& locs) {
    std::string out = "[";
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (i > 0) out += ",";
        out += locs[i];
    }
    return out + "]";
}

// First element of a \ b, if any.
std::optional<std::string> first_missing(const std::set<std::string>& a,
                                         const std::set<std::string>& b) {
    for (const auto& x : a)
        if (!b.count(x)) return x;
    return std::nullopt;
}

} // namespace

CheckReport check_symbolic_soundness_completeness(const CompPtr& p, const DomainSpec& d,
                                                  const VerifyOptions& opts) {
    auto start = Clock::now();
    CheckReport report;
    report.name = "symbolic-explicit correspondence (action + env transitions)";

    if (d.universe_size() > opts.max_universe) {
        report.budget_exceeded = true;
        report.counterexample = "valuation universe exceeds budget (" +
                                std::to_string(d.universe_size()) + " > " +
                                std::to_string(opts.max_universe) + ")";
        report.stats.wall_ms = ms_since(start);
        return report;
    }

    Sts sts = build_sts(p, /*prune=*/true);
    if (opts.mutate_sts) opts.mutate_sts(sts);
    std::vector<Valuation> universe = enumerate_valuations(d);
    report.stats.states = sts.states.size();

    if (sts.states.size() * universe.size() > opts.max_pairs) {
        report.budget_exceeded = true;
        report.counterexample = "state/valuation budget exceeded";
        report.stats.wall_ms = ms_since(start);
        return report;
    }

    // Per-transition data hoisted out of the σ loop.
    struct ActInfo {
        std::size_t dst;
        std::string action;
        bool sync;
        PredPtr u, n, np, r;
        std::string target_key;
    };
    struct EnvInfo {
        std::size_t dst;
        PredPtr u, n;
        std::set<std::string> sync_actions;
        std::string target_key;
    };
    std::vector<std::string> state_keys;
    for (const auto& q : sts.states) state_keys.push_back(comp_key(q));

    std::vector<std::vector<ActInfo>> acts_of(sts.states.size());
    std::vector<std::vector<EnvInfo>> envs_of(sts.states.size());
    for (const auto& e : sts.action_edges)
        acts_of[e.src].push_back({e.dst, e.action, e.sync, e.u.to_pred(), e.n.to_pred(),
                                  e.n_prime.to_pred(), e.r.to_pred(), state_keys[e.dst]});
    for (const auto& e : sts.env_edges)
        envs_of[e.src].push_back(
            {e.dst, e.u.to_pred(), e.n.to_pred(), e.sync_actions, state_keys[e.dst]});

    for (std::size_t si = 0; si < sts.states.size(); ++si) {
        TermPtr state_term = Term::of(sts.states[si]);
        for (const auto& sigma : universe) {
            ++report.stats.pairs;

            // Explicit side.
            std::set<std::string> explicit_act, explicit_env;
            for (const auto& s : action_steps(state_term, sigma, d))
                explicit_act.insert(s.action + "|" + (s.sync ? "T" : "F") + "|" +
                                    term_key(s.target) + "|" + to_string(s.after));
            for (const auto& s : env_steps(state_term, sigma, d))
                explicit_env.insert(set_str(s.sync_actions) + "|" + term_key(s.target) + "|" +
                                    to_string(s.after));

            // Reconstruction from the symbolic labels (soundness side
            // conditions: σ⊨u, σ⊨n, σ'⊨n', σ'⁺∪σ⊨r plus the frame
            // condition; env: σ⊨u, σ⊨n, σ'⊨n).
            std::set<std::string> rebuilt_act, rebuilt_env;
            for (const auto& t : acts_of[si]) {
                if (!satisfies(sigma, t.u) || !satisfies(sigma, t.n)) continue;
                for (const auto& sp : reset_successors(sigma, t.r, d)) {
                    if (!satisfies(sp, t.np)) continue;
                    if (!satisfies_reset(sigma, sp, t.r)) continue;
                    rebuilt_act.insert(t.action + "|" + (t.sync ? "T" : "F") + "|" +
                                       t.target_key + "|" + to_string(sp));
                }
            }
            for (const auto& t : envs_of[si]) {
                if (!satisfies(sigma, t.u) || !satisfies(sigma, t.n)) continue;
                for (const auto& sp : universe) {
                    if (!satisfies(sp, t.n)) continue;
                    rebuilt_env.insert(set_str(t.sync_actions) + "|" + t.target_key + "|" +
                                       to_string(sp));
                }
            }

            if (explicit_act != rebuilt_act || explicit_env != rebuilt_env) {
                std::string detail;
                if (auto m = first_missing(explicit_act, rebuilt_act))
                    detail = "explicit action step not reconstructible from any symbolic "
                             "transition: " + *m;
                else if (auto m = first_missing(rebuilt_act, explicit_act))
                    detail = "symbolic transition yields a spurious action step: " + *m;
                else if (auto m = first_missing(explicit_env, rebuilt_env))
                    detail = "explicit env step not reconstructible: " + *m;
                else if (auto m = first_missing(rebuilt_env, explicit_env))
                    detail = "symbolic env transition yields a spurious step: " + *m;
                report.counterexample = "state " + sts.state_display(si) + ", sigma " +
                                        to_string(sigma) + ": " + detail;
                report.stats.wall_ms = ms_since(start);
                return report;
            }
        }
    }
    report.pass = true;
    report.stats.wall_ms = ms_since(start);
    return report;
}

CheckReport check_lits_soundness_completeness(const CompPtr& p, const VerifyOptions& opts) {
    auto start = Clock::now();
    CheckReport report;
    report.name = "linear-symbolic correspondence (action + leads-to transitions)";

    Sts sts = build_sts(p, /*prune=*/true);
    Lits lits = build_lits(p);
    if (opts.mutate_lits) opts.mutate_lits(lits);
    std::vector<std::vector<std::string>> all_locs = locsof(p);
    report.stats.states = sts.states.size();

    const LitsStatic& st = lits.statics;
    std::size_t n = st.automata.size();
    auto is_sync = [&](const std::string& a) { return st.sync_actions.count(a) > 0; };

    for (std::size_t si = 0; si < sts.states.size(); ++si) {
        CompPtr q = sts.states[si];
        std::vector<AutomatonPtr> autos = automata_of(q);

        // Symbolic side, pruned and rendered to comparable keys.
        std::set<std::string> sym_act, sym_env;
        for (const auto& e : sts.action_edges) {
            if (e.src != si) continue;
            sym_act.insert(e.action + "|" + (e.sync ? "T" : "F") + "|" + e.u.to_string() + "|" +
                           e.n.to_string() + "|" + e.n_prime.to_string() + "|" +
                           e.r.to_string() + "|" + locs_str(*sts.state_locs[e.dst]));
        }
        for (const auto& e : sts.env_edges) {
            if (e.src != si) continue;
            sym_env.insert(e.u.to_string() + "|" + e.n.to_string() + "|" +
                           set_str(e.sync_actions) + "|" + locs_str(*sts.state_locs[e.dst]));
        }

        // Reconstruction from the LiTS: u = ⋀ f.i(ℓ⃗.i), n = ⋀ g.i(ℓ⃗.i),
        // n' = ⋀ g.i((v⃗' ▷ ℓ⃗).i), b ≡ a ∈ A, target p[v⃗' ▷ ℓ⃗].
        std::set<std::string> lin_act, lin_env;
        for (const auto& lvec : all_locs) {
            ++report.stats.pairs;
            std::vector<PredPtr> u_items, n_items;
            for (std::size_t i = 0; i < n; ++i) {
                u_items.push_back(autos[i]->init_of(lvec[i]));
                n_items.push_back(st.inv_funcs[i].at(lvec[i]));
            }
            Conj u = Conj::of_items(u_items);
            Conj nn = Conj::of_items(n_items);
            if (u.has_false_conjunct()) continue;  // pruned on both sides
            lin_env.insert(u.to_string() + "|" + nn.to_string() + "|" +
                           set_str(st.sync_actions) + "|" + locs_str(lvec));
            for (const auto& t : lits.transitions) {
                if (!subseq(t.source, lvec)) continue;
                std::vector<std::string> target = overwrite(t.target, lvec);
                std::vector<PredPtr> np_items;
                for (std::size_t i = 0; i < n; ++i)
                    np_items.push_back(st.inv_funcs[i].at(target[i]));
                Conj np = Conj::of_items(np_items);
                lin_act.insert(t.action + "|" + (is_sync(t.action) ? "T" : "F") + "|" +
                               u.to_string() + "|" + nn.to_string() + "|" + np.to_string() +
                               "|" + t.reset.to_string() + "|" + locs_str(target));
            }
        }

        if (sym_act != lin_act || sym_env != lin_env) {
            std::string detail;
            if (auto m = first_missing(sym_act, lin_act))
                detail = "symbolic action transition not derivable from the LiTS: " + *m;
            else if (auto m = first_missing(lin_act, sym_act))
                detail = "LiTS expansion yields a spurious action transition: " + *m;
            else if (auto m = first_missing(sym_env, lin_env))
                detail = "symbolic env transition not derivable from the LiTS: " + *m;
            else if (auto m = first_missing(lin_env, sym_env))
                detail = "LiTS expansion yields a spurious env transition: " + *m;
            report.counterexample =
                "state " + sts.state_display(si) + ": " + detail;
            report.stats.wall_ms = ms_since(start);
            return report;
        }
    }
    report.pass = true;
    report.stats.wall_ms = ms_since(start);
    return report;
}

TermLts build_term_lts(const std::vector<TermPtr>& roots, const DomainSpec& d,
                       std::size_t max_states) {
    TermLts lts;
    std::map<std::string, std::size_t> state_index;
    std::map<std::string, int> label_index;
    std::deque<std::size_t> work;

    auto intern_state = [&](const TermPtr& t) -> std::optional<std::size_t> {
        std::string key = term_key(t);
        auto it = state_index.find(key);
        if (it != state_index.end()) return it->second;
        if (lts.states.size() >= max_states) {
            lts.truncated = true;
            return std::nullopt;
        }
        std::size_t id = lts.states.size();
        lts.states.push_back(t);
        lts.keys.push_back(key);
        lts.edges.emplace_back();
        state_index.emplace(std::move(key), id);
        work.push_back(id);
        return id;
    };
    auto intern_label = [&](const std::string& l) {
        auto it = label_index.find(l);
        if (it != label_index.end()) return it->second;
        int id = static_cast<int>(lts.labels.size());
        lts.labels.push_back(l);
        label_index.emplace(l, id);
        return id;
    };

    for (const auto& r : roots) intern_state(r);

    std::vector<Valuation> universe = enumerate_valuations(d);
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        TermPtr t = lts.states[id];
        for (const auto& sigma : universe) {
            std::string sig_str = to_string(sigma);
            for (const auto& s : action_steps(t, sigma, d)) {
                auto dst = intern_state(s.target);
                if (!dst) continue;
                int label = intern_label("a|" + sig_str + "|" + s.action + "|" +
                                         (s.sync ? "T" : "F") + "|" + to_string(s.after));
                lts.edges[id].emplace_back(label, static_cast<int>(*dst));
            }
            for (const auto& s : env_steps(t, sigma, d)) {
                auto dst = intern_state(s.target);
                if (!dst) continue;
                int label = intern_label("e|" + sig_str + "|" + set_str(s.sync_actions) + "|" +
                                         to_string(s.after));
                lts.edges[id].emplace_back(label, static_cast<int>(*dst));
            }
        }
    }
    for (auto& es : lts.edges) {
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
    }
    return lts;
}

std::vector<int> coarsest_partition(const TermLts& lts) {
    std::size_t n = lts.states.size();
    std::vector<int> block(n, 0);
    std::size_t blocks = n == 0 ? 0 : 1;
    while (true) {
        // Signature: the set of (label, target block) pairs, refined by the
        // current block. Splitting on full signatures keeps the result
        // independent of state order.
        std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> next_id;
        std::vector<int> next(n, 0);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::pair<int, int>> sig;
            sig.reserve(lts.edges[s].size());
            for (const auto& [label, dst] : lts.edges[s]) sig.emplace_back(label, block[dst]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto key = std::make_pair(block[s], std::move(sig));
            auto it = next_id.find(key);
            if (it == next_id.end())
                it = next_id.emplace(std::move(key), static_cast<int>(next_id.size())).first;
            next[s] = it->second;
        }
        if (next_id.size() == blocks) return next;
        blocks = next_id.size();
        block = std::move(next);
    }
}

namespace {

// The candidate witness relation: (p, |[{ℓ⃗↦⊥}::α_p[x]]|-root pair) plus
// (p[i⃗], |[{ℓ⃗↦i⃗}::α_p[x]]|) for every i⃗. Checks the transfer
// conditions directly on the term graph's edges.
struct Eq4Checker {
    const TermLts& lts;
    std::map<std::string, std::size_t> index;
    std::set<std::pair<std::size_t, std::size_t>> related;  // symmetric

    explicit Eq4Checker(const TermLts& l) : lts(l) {
        for (std::size_t i = 0; i < lts.keys.size(); ++i) index.emplace(lts.keys[i], i);
    }

    std::optional<std::size_t> find(const TermPtr& t) const {
        auto it = index.find(term_key(t));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    void relate(std::size_t a, std::size_t b) {
        related.emplace(a, b);
        related.emplace(b, a);
    }

    bool rel(std::size_t a, std::size_t b) const { return related.count({a, b}) > 0; }

    // Every edge of x is matched by an equally-labeled edge of y with
    // related targets.
    std::optional<std::string> transfer(std::size_t x, std::size_t y) const {
        for (const auto& [label, tx] : lts.edges[x]) {
            bool ok = false;
            for (const auto& [label2, ty] : lts.edges[y]) {
                if (label2 != label) continue;
                if (rel(static_cast<std::size_t>(tx), static_cast<std::size_t>(ty))) {
                    ok = true;
                    break;
                }
            }
            if (!ok)
                return "step '" + lts.labels[label] + "' of " + lts.keys[x].substr(0, 120) +
                       " has no related match in the partner";
        }
        return std::nullopt;
    }
};

} // namespace

CheckReport check_correctness_of_linearization(const CompPtr& p, const Model& context,
                                               const DomainSpec& d, const VerifyOptions& opts) {
    auto start = Clock::now();
    CheckReport report;
    report.name = "linearization correctness (stateless bisimilarity over bounded domain)";

    if (d.universe_size() > opts.max_universe) {
        report.budget_exceeded = true;
        report.counterexample = "valuation universe exceeds budget";
        report.stats.wall_ms = ms_since(start);
        return report;
    }

    LinearizationResult res = linearize(p, context);
    if (opts.mutate_linearization) opts.mutate_linearization(res);

    TermPtr left_root = Term::of(p);
    TermPtr right_root = scope_linearized(res);

    // α_p reinitialized to its single location: the shape action and env
    // steps produce inside the scope.
    AutomatonPtr alpha_reinit = reinit_automaton(res.automaton, res.location);

    std::vector<std::vector<std::string>> all_locs = locsof(p);
    std::vector<TermPtr> roots{left_root, right_root};
    std::vector<std::pair<TermPtr, TermPtr>> candidate{{left_root, right_root}};
    for (const auto& lvec : all_locs) {
        TermPtr lhs = Term::of(reinit(p, lvec));
        std::vector<ScopeBinding> bindings;
        for (std::size_t i = 0; i < res.pointers.size(); ++i)
            bindings.push_back({res.pointers[i], Value::location(lvec[i]),
                                res.pointer_domains[i].second});
        TermPtr rhs = Term::scope(std::move(bindings), Term::of(Comp::mk_atom(alpha_reinit)));
        roots.push_back(lhs);
        roots.push_back(rhs);
        candidate.emplace_back(lhs, rhs);
    }

    TermLts lts = build_term_lts(roots, d, opts.max_states);
    report.stats.states = lts.states.size();
    if (lts.truncated) {
        report.budget_exceeded = true;
        report.counterexample = "term-graph state budget exceeded";
        report.stats.wall_ms = ms_since(start);
        return report;
    }

    // Route 1: coarsest partition.
    std::vector<int> block = coarsest_partition(lts);
    bool roots_related = block[0] == block[1];

    // Route 2: the candidate relation's transfer conditions.
    Eq4Checker eq4(lts);
    for (const auto& [lhs, rhs] : candidate) {
        auto li = eq4.find(lhs);
        auto ri = eq4.find(rhs);
        if (!li || !ri) {
            report.counterexample = "candidate-relation member missing from the term graph";
            report.stats.wall_ms = ms_since(start);
            return report;
        }
        eq4.relate(*li, *ri);
    }
    std::optional<std::string> eq4_fail;
    for (const auto& [a, b] : eq4.related) {
        ++report.stats.pairs;
        if (auto why = eq4.transfer(a, b)) {
            eq4_fail = why;
            break;
        }
    }

    // The two routes must agree on root-relatedness: the candidate relation
    // witnesses the bisimulation exactly when the coarsest partition
    // relates the roots.
    std::string disagreement;
    if (roots_related == eq4_fail.has_value())
        disagreement = " [routes disagree: partition says " +
                       std::string(roots_related ? "related" : "not related") +
                       ", candidate relation says " +
                       std::string(eq4_fail ? "not related" : "related") + "]";

    if (!roots_related) {
        // Point at a distinguishing label: one that reaches some block from
        // exactly one of the roots under the final partition.
        std::string why = "roots land in different partition blocks";
        auto sig_of = [&](std::size_t s) {
            std::set<std::pair<int, int>> sig;
            for (const auto& [label, dst] : lts.edges[s]) sig.emplace(label, block[dst]);
            return sig;
        };
        auto s0 = sig_of(0), s1 = sig_of(1);
        bool found = false;
        for (const auto& e : s0)
            if (!s1.count(e)) {
                why += "; composition step '" + lts.labels[e.first] +
                       "' has no equivalent in the linearized term";
                found = true;
                break;
            }
        if (!found)
            for (const auto& e : s1)
                if (!s0.count(e)) {
                    why += "; linearized step '" + lts.labels[e.first] +
                           "' has no equivalent in the composition";
                    break;
                }
        report.counterexample = why + disagreement;
        report.stats.wall_ms = ms_since(start);
        return report;
    }
    if (eq4_fail) {
        report.counterexample = "candidate witness relation fails a transfer condition: " +
                                *eq4_fail + disagreement;
        report.stats.wall_ms = ms_since(start);
        return report;
    }

    report.pass = true;
    report.stats.wall_ms = ms_since(start);
    return report;
}

} // namespace ciflin
