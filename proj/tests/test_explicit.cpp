#include <doctest.h>

#include "ciflin/explicit_sem.hpp"
#include "ciflin/generator.hpp"
#include "ciflin/linearize.hpp"
#include "ciflin/parser.hpp"
#include "ciflin/symbolic.hpp"

#include "testutil.hpp"

#include <algorithm>

using namespace ciflin;

namespace {

Valuation sigma0() {
    return {{"wq", Value::list({})},
            {"n", Value::integer(0)},
            {"id", Value::integer(0)},
            {"p", Value::integer(0)}};
}

// Independent oracle for single-automaton action steps: enumerate the full
// valuation universe as σ' candidates and check the automaton action
// rule's premises directly, including the frame condition. Deliberately
// ignorant of the stepper's frame-based successor enumeration.
std::vector<ActionStep> atom_action_oracle(const AutomatonPtr& a, const Valuation& sigma,
                                           const DomainSpec& d) {
    std::vector<ActionStep> out;
    for (const auto& e : a->edges) {
        if (!satisfies(sigma, a->init_of(e.src)) || !satisfies(sigma, a->inv_of(e.src)))
            continue;
        std::set<VarRef> fv = free_vars(e.reset);
        for (const auto& sp : enumerate_valuations(d)) {
            if (!satisfies(sp, a->inv_of(e.dst))) continue;
            if (!satisfies_reset(sigma, sp, e.reset)) continue;
            bool frame = true;
            for (const auto& [name, v] : sigma) {
                if (fv.count(VarRef{name, true})) continue;
                if (sp.at(name) != v) { frame = false; break; }
            }
            if (!frame) continue;
            out.push_back({e.action, a->sync_actions.count(e.action) > 0,
                           Term::of(Comp::mk_atom(reinit_automaton(a, e.dst))), sp});
        }
    }
    return out;
}

std::set<std::string> step_keys(const std::vector<ActionStep>& steps) {
    std::set<std::string> out;
    for (const auto& s : steps)
        out.insert(s.action + "|" + (s.sync ? "T" : "F") + "|" + term_key(s.target) + "|" +
                   to_string(s.after));
    return out;
}

} // namespace

TEST_CASE("action_steps: gate alone matches the brute-force oracle") {
    Model m = testutil::traingate();
    AutomatonPtr gate = m.find_automaton("Gate");
    TermPtr t = Term::of(Comp::mk_atom(gate));

    std::vector<ActionStep> got = action_steps(t, sigma0(), m.domains);
    std::vector<ActionStep> want = atom_action_oracle(gate, sigma0(), m.domains);
    CHECK(step_keys(got) == step_keys(want));

    // Frozen expectation: enqueueing train 1 extends the empty queue.
    bool found = false;
    for (const auto& s : got) {
        if (s.action == "rq" && s.after.at("wq") == testutil::int_list({1}) &&
            s.after.at("id") == Value::integer(1)) {
            CHECK(s.sync);
            CHECK(s.after.at("n") == Value::integer(0));
            CHECK(s.after.at("p") == Value::integer(0));
            CHECK(term_key(s.target) ==
                  comp_key(Comp::mk_atom(reinit_automaton(gate, "C"))));
            found = true;
        }
    }
    CHECK(found);

    SUBCASE("oracle agreement over every valuation") {
        for (const auto& sigma : enumerate_valuations(m.domains))
            CHECK(step_keys(action_steps(t, sigma, m.domains)) ==
                  step_keys(atom_action_oracle(gate, sigma, m.domains)));
    }
}

TEST_CASE("action_steps: false initialization yields nothing") {
    Model m = parse_model("domain x : int 0..1;\n"
                          "actions a;\n"
                          "automaton A { location L { edge a when x' == 1 goto L; } }");
    TermPtr t = Term::of(m.composition);
    for (const auto& sigma : enumerate_valuations(m.domains))
        CHECK(action_steps(t, sigma, m.domains).empty());
}

TEST_CASE("action_steps: full train-gate at sigma0") {
    Model m = testutil::traingate();
    TermPtr t = Term::of(m.composition);
    std::vector<ActionStep> steps = action_steps(t, sigma0(), m.domains);
    REQUIRE(!steps.empty());
    for (const auto& s : steps) {
        CHECK(s.action == "rq");
        CHECK(s.sync);
    }
    // Both trains can request; the queue records the chosen id.
    std::set<std::string> queues;
    for (const auto& s : steps) queues.insert(s.after.at("wq").to_string());
    CHECK(queues == std::set<std::string>{"[0]", "[1]"});
}

TEST_CASE("env_steps: gate examples") {
    Model m = testutil::traingate();
    AutomatonPtr gate = m.find_automaton("Gate");
    TermPtr t = Term::of(Comp::mk_atom(gate));

    std::vector<EnvStep> steps = env_steps(t, sigma0(), m.domains);
    REQUIRE(!steps.empty());
    std::string closed = comp_key(Comp::mk_atom(reinit_automaton(gate, "C")));
    std::size_t n0_count = 0;
    for (const auto& s : steps) {
        CHECK(s.sync_actions == std::set<std::string>{"go", "out", "rq"});
        CHECK(term_key(s.target) == closed);  // init(O) = false: never entered
        CHECK(s.after.at("n") == Value::integer(0));
        ++n0_count;
    }
    // Every σ' with n = 0 appears: 84 valuations / 3 values of n.
    CHECK(n0_count == 28);

    SUBCASE("no env step when no initial location is satisfied") {
        Valuation blocked = sigma0();
        blocked["wq"] = testutil::int_list({0});
        CHECK(env_steps(t, blocked, m.domains).empty());
    }
    SUBCASE("train-gate env steps all carry the full sync set") {
        TermPtr full = Term::of(m.composition);
        for (const auto& s : env_steps(full, sigma0(), m.domains))
            CHECK(s.sync_actions == std::set<std::string>{"go", "out", "rq"});
    }
}

TEST_CASE("explicit step properties over random models") {
    GenParams params;
    params.max_universe = 24;
    params.max_automata = 2;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CAPTURE(seed);
        Model m = generate_model(seed, params);
        TermPtr t = Term::of(m.composition);
        std::vector<Valuation> universe = enumerate_valuations(m.domains);

        // Atom steps against the brute-force oracle.
        for (const auto& a : m.automata) {
            TermPtr at = Term::of(Comp::mk_atom(a));
            const Valuation& sigma = universe[seed % universe.size()];
            CHECK(step_keys(action_steps(at, sigma, m.domains)) ==
                  step_keys(atom_action_oracle(a, sigma, m.domains)));
        }

        // Invariant preservation for atom env steps.
        for (const auto& a : m.automata) {
            TermPtr at = Term::of(Comp::mk_atom(a));
            const Valuation& sigma = universe[(seed + 1) % universe.size()];
            for (const auto& s : env_steps(at, sigma, m.domains)) {
                auto target_autos = automata_of(s.target->comp);
                for (const auto& loc : target_autos[0]->locations) {
                    if (target_autos[0]->init_of(loc)->kind != Pred::Kind::True) continue;
                    CHECK(satisfies(sigma, a->inv_of(loc)));
                    CHECK(satisfies(s.after, a->inv_of(loc)));
                }
            }
        }

        // Par symmetry: steps of p||q and q||p agree modulo swapping the
        // target components.
        if (m.automata.size() >= 2) {
            CompPtr pq = Comp::mk_par(Comp::mk_atom(m.automata[0]),
                                      Comp::mk_atom(m.automata[1]));
            CompPtr qp = Comp::mk_par(Comp::mk_atom(m.automata[1]),
                                      Comp::mk_atom(m.automata[0]));
            const Valuation& sigma = universe[(seed + 2) % universe.size()];
            std::set<std::string> lhs, rhs;
            for (const auto& s : action_steps(Term::of(pq), sigma, m.domains)) {
                const CompPtr& c = s.target->comp;
                lhs.insert(s.action + "|" + (s.sync ? "T" : "F") + "|" +
                           comp_key(Comp::mk_par(c->right, c->left)) + "|" +
                           to_string(s.after));
            }
            for (const auto& s : action_steps(Term::of(qp), sigma, m.domains))
                rhs.insert(s.action + "|" + (s.sync ? "T" : "F") + "|" +
                           comp_key(s.target->comp) + "|" + to_string(s.after));
            CHECK(lhs == rhs);
        }

        // Sync-flag monotonicity: σ_A never removes steps nor clears b.
        {
            std::set<std::string> wrap{m.actions.begin(), m.actions.end()};
            CompPtr wrapped = Comp::mk_sync(wrap, m.composition);
            const Valuation& sigma = universe[(seed + 3) % universe.size()];
            auto plain = action_steps(t, sigma, m.domains);
            auto more = action_steps(Term::of(wrapped), sigma, m.domains);
            CHECK(more.size() == plain.size());
            std::set<std::string> keys;
            for (const auto& s : more) {
                if (s.action != kTau) CHECK(s.sync);
                else CHECK_FALSE(s.sync);
                keys.insert(s.action + "|" + to_string(s.after));
            }
            for (const auto& s : plain)
                CHECK(keys.count(s.action + "|" + to_string(s.after)));
        }
    }
}

TEST_CASE("scope bottom-rule agrees with the union over concrete bindings") {
    Model m = testutil::traingate();
    LinearizationResult res = linearize(m.composition, m);
    TermPtr bottom = scope_linearized(res);

    std::vector<std::vector<std::string>> combos = locsof(m.composition);
    for (const Valuation& sigma : {sigma0(), Valuation{{"wq", testutil::int_list({0})},
                                                       {"n", Value::integer(1)},
                                                       {"id", Value::integer(0)},
                                                       {"p", Value::integer(0)}}}) {
        std::set<std::string> expect;
        for (const auto& combo : combos) {
            std::vector<ScopeBinding> bindings;
            for (std::size_t i = 0; i < res.pointers.size(); ++i)
                bindings.push_back({res.pointers[i], Value::location(combo[i]),
                                    res.pointer_domains[i].second});
            TermPtr concrete = Term::scope(bindings, Term::of(Comp::mk_atom(res.automaton)));
            for (const auto& k : step_keys(action_steps(concrete, sigma, m.domains)))
                expect.insert(k);
        }
        CHECK(step_keys(action_steps(bottom, sigma, m.domains)) == expect);
    }
}

TEST_CASE("explicit_lts: single location, no variables") {
    Model m = parse_model("automaton A { location L { initial; } }");
    TermPtr t = Term::of(m.composition);
    std::vector<Valuation> init = initial_valuations(t, m.domains);
    REQUIRE(init.size() == 1);  // the empty valuation
    ExplicitLts lts = build_explicit_lts(t, init, m.domains, 100);
    // A[L] equals A structurally (init is already literal true at L), so
    // the whole system is one state with an env self-loop.
    CHECK(lts.states.size() == 1);
    CHECK(lts.action_edges.empty());
    REQUIRE(lts.env_edges.size() == 1);
    CHECK(lts.env_edges[0].src == 0);
    CHECK(lts.env_edges[0].dst == 0);
    CHECK(lts.env_edges[0].sync_actions.empty());
    CHECK_FALSE(lts.truncated);
}

TEST_CASE("explicit_lts: gate reachability satisfies invariants") {
    Model m = testutil::traingate();
    AutomatonPtr gate = m.find_automaton("Gate");
    TermPtr t = Term::of(Comp::mk_atom(gate));
    std::vector<Valuation> init = initial_valuations(t, m.domains);
    REQUIRE(!init.empty());
    ExplicitLts lts = build_explicit_lts(t, init, m.domains, 5000);
    REQUIRE_FALSE(lts.truncated);
    for (const auto& s : lts.states) {
        auto autos = automata_of(s.term->comp);
        for (const auto& loc : autos[0]->locations) {
            if (autos[0]->init_of(loc)->kind != Pred::Kind::True) continue;
            CHECK(satisfies(s.valuation, autos[0]->inv_of(loc)));
        }
    }
}

TEST_CASE("explicit_lts: train-gate action edges are synchronizing") {
    Model m = testutil::traingate();
    TermPtr t = Term::of(m.composition);
    std::vector<Valuation> init = initial_valuations(t, m.domains);
    CHECK(init.size() == 4);  // wq = [], n = 0; id and p free
    ExplicitLts lts = build_explicit_lts(t, init, m.domains, 20000);
    REQUIRE_FALSE(lts.truncated);
    for (const auto& e : lts.action_edges) {
        if (e.action == "stop") CHECK_FALSE(e.sync);
        else CHECK(e.sync);
    }
    SUBCASE("bound reporting") {
        ExplicitLts small = build_explicit_lts(t, init, m.domains, 3);
        CHECK(small.truncated);
        CHECK(small.states.size() == 3);
    }
}
