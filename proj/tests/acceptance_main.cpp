// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include "ciflin/export.hpp"
#include "ciflin/generator.hpp"
#include "ciflin/parser.hpp"
#include "ciflin/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ciflin;
namespace fs = std::filesystem;

namespace {

std::string g_bin;  // cif-lin path, for the CLI determinism criterion

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Model traingate() { return parse_model(read_file(std::string(CIFLIN_MODELS_DIR) + "/traingate.cif")); }

Model sub_model(const Model& m, const std::string& automaton) {
    Model out;
    out.domains = m.domains;
    out.actions = m.actions;
    out.automata = {m.find_automaton(automaton)};
    out.composition_name = "Main";
    out.composition = Comp::mk_atom(out.automata[0]);
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

bool expect(bool cond, std::string& detail, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

// ---- criterion 1: pruned STS size ------------------------------------

bool criterion_sts_size(std::string& detail) {
    Model m = traingate();
    Timer t;
    Sts sts = build_sts(m.composition, true);
    double secs = t.seconds();
    bool ok = expect(sts.states.size() == 16, detail,
                     "state count " + std::to_string(sts.states.size()) + " != 16");
    ok &= expect(secs < 1.0, detail, "took " + std::to_string(secs) + " s (limit 1 s)");
    return ok;
}

// ---- criterion 2: known STS fragment labels ----------------------------

bool criterion_fig3_fragment(std::string& detail) {
    Model m = traingate();
    Sts sts = build_sts(m.composition, true);
    Conj n0 = Conj::from(parse_predicate("n == 0", m));
    Conj u0 = Conj::from(parse_predicate("wq == []", m));
    Conj r0 = Conj::from(parse_predicate("id' == 0 && wq' == wq ++ [id']", m));

    bool act_found = false;
    for (const auto& e : sts.action_edges) {
        if (e.src != 0) continue;
        if (!sts.state_locs[e.dst] ||
            *sts.state_locs[e.dst] != std::vector<std::string>{"N", "F", "C"})
            continue;
        if (e.action == "rq" && e.sync && e.r == r0 && e.n == n0 && e.n_prime == n0)
            act_found = true;
    }
    bool env_found = false;
    for (const auto& e : sts.env_edges) {
        if (e.src != 0) continue;
        if (!sts.state_locs[e.dst] ||
            *sts.state_locs[e.dst] != std::vector<std::string>{"F", "F", "C"})
            continue;
        if (e.u == u0 && e.n == n0) env_found = true;
    }
    bool ok = expect(act_found, detail, "root rq transition to <N,F,C> with the expected "
                                        "label is missing");
    ok &= expect(env_found, detail, "root env transition to <F,F,C> with u=wq==[] and "
                                    "n=n==0 is missing");
    return ok;
}

// ---- criterion 3: LiTS size and reference-edge containment -------------

struct ExpectedEdge {
    std::string action;
    // pointer → (guard location, update location)
    std::map<std::string, std::pair<std::string, std::string>> pointers;
    std::string data;  // data reset in DSL syntax
};

bool criterion_lits_and_fig4(std::string& detail) {
    Model m = traingate();
    auto ts = lits_action_transitions(m.composition);
    bool ok = expect(ts.size() == 12, detail,
                     "LiTS has " + std::to_string(ts.size()) + " transitions, expected 12");

    LinearizationResult res = linearize(m.composition, m);
    ok &= expect(res.automaton->edges.size() == 12, detail, "linear automaton edge count");

    // The ten reference edges of the train-gate linear automaton: per
    // train its rq, stop, two go variants and out, each with the pointer
    // guard/update pairs the LiTS dictates. The two rq-while-open
    // synchronizations complete the twelve.
    std::vector<ExpectedEdge> expected;
    for (int i = 0; i <= 1; ++i) {
        std::string li = "l" + std::to_string(i);
        std::string id = std::to_string(i);
        expected.push_back({"rq",
                            {{li, {"F", "N"}}, {"l2", {"C", "C"}}},
                            "id' == " + id + " && wq' == wq ++ [id']"});
        expected.push_back({"stop", {{li, {"N", "S"}}}, "true"});
        expected.push_back({"go",
                            {{li, {"N", "P"}}, {"l2", {"C", "O"}}},
                            "p' == " + id + " && n' == n + 1 && [p'] ++ wq' == wq"});
        expected.push_back({"go",
                            {{li, {"S", "P"}}, {"l2", {"C", "O"}}},
                            "p' == " + id + " && n' == n + 1 && [p'] ++ wq' == wq"});
        expected.push_back({"out",
                            {{li, {"P", "F"}}, {"l2", {"O", "C"}}},
                            "n' == n - 1"});
    }

    auto decompose = [&](const Edge& e) {
        ExpectedEdge out;
        out.action = e.action;
        std::vector<PredPtr> data;
        Conj reset_conj = Conj::from(e.reset);
        for (const auto& item : reset_conj.items()) {
            if (item->kind == Pred::Kind::Cmp && item->op == CmpOp::Eq &&
                item->lhs->kind == Expr::Kind::Var &&
                item->rhs->kind == Expr::Kind::Literal && item->rhs->literal.is_loc() &&
                std::find(res.pointers.begin(), res.pointers.end(), item->lhs->var.name) !=
                    res.pointers.end()) {
                auto& slot = out.pointers[item->lhs->var.name];
                (item->lhs->var.primed ? slot.second : slot.first) =
                    item->rhs->literal.as_loc();
                continue;
            }
            data.push_back(item);
        }
        out.data = Conj::of_items(data).to_string();
        return out;
    };

    std::vector<ExpectedEdge> ours;
    for (const auto& e : res.automaton->edges) ours.push_back(decompose(e));

    for (const auto& want : expected) {
        bool found = false;
        for (const auto& have : ours)
            if (have.action == want.action && have.pointers == want.pointers &&
                have.data == want.data) {
                found = true;
                break;
            }
        ok &= expect(found, detail,
                     "reference edge '" + want.action + ", " + want.data +
                         "' matches no linear-automaton edge");
    }
    return ok;
}

// ---- criterion 4: init(x), inv(x) semantics ---------------------------

bool criterion_linear_predicates(std::string& detail) {
    Model m = traingate();
    Timer t;
    LinearizationResult res = linearize(m.composition, m);
    PredPtr init_x = res.automaton->init_of(res.location);
    PredPtr inv_x = res.automaton->inv_of(res.location);

    bool ok = true;
    std::vector<Value> queues = m.domains.find("wq")->enumerate();
    for (const char* l0 : {"F", "N", "S", "P"})
        for (const char* l1 : {"F", "N", "S", "P"})
            for (const char* l2 : {"C", "O"})
                for (const auto& wq : queues)
                    for (std::int64_t n = 0; n <= 2; ++n) {
                        EvalEnv env{{VarRef{"l0", false}, Value::location(l0)},
                                    {VarRef{"l1", false}, Value::location(l1)},
                                    {VarRef{"l2", false}, Value::location(l2)},
                                    {VarRef{"wq", false}, wq},
                                    {VarRef{"n", false}, Value::integer(n)}};
                        bool init_want = std::string(l0) == "F" && std::string(l1) == "F" &&
                                         std::string(l2) == "C" && wq == Value::list({});
                        bool inv_want = (std::string(l2) != "C" || n == 0) &&
                                        (std::string(l2) != "O" || n <= 1);
                        ok &= expect(eval_pred(init_x, env) == init_want, detail,
                                     "init(x) differs at l0=" + std::string(l0) + " l1=" +
                                         l1 + " l2=" + l2 + " wq=" + wq.to_string() +
                                         " n=" + std::to_string(n));
                        ok &= expect(eval_pred(inv_x, env) == inv_want, detail,
                                     "inv(x) differs at l2=" + std::string(l2) +
                                         " n=" + std::to_string(n));
                    }
    ok &= expect(t.seconds() < 5.0, detail, "exhaustive check exceeded 5 s");
    return ok;
}

// ---- criterion 5: transition-count prediction --------------------------

bool criterion_size_prediction(std::string& detail) {
    GenParams params;
    params.hypothesis_mode = true;
    params.min_automata = 2;
    params.max_automata = 4;
    params.max_edges = 6;
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Model m = generate_model(seed, params);
        SizePrediction pred = predict_size(m.composition, "act0");
        ok &= expect(pred.hypothesis_ok, detail,
                     "seed " + std::to_string(seed) + ": hypothesis rejected");
        if (!pred.hypothesis_ok) continue;
        std::size_t actual = lits_action_transitions(m.composition).size();
        ok &= expect(pred.predicted == actual, detail,
                     "seed " + std::to_string(seed) + ": predicted " +
                         std::to_string(pred.predicted) + ", actual " +
                         std::to_string(actual));
    }
    return ok;
}

// ---- criteria 6/7/8 share the model set --------------------------------

GenParams random_check_params() {
    GenParams params;
    params.min_automata = 2;
    params.max_automata = 3;
    params.max_locations = 3;
    params.max_edges = 4;
    params.max_vars = 3;
    params.max_int_hi = 5;
    params.max_universe = 200;
    return params;
}

bool criterion_symbolic_explicit(std::string& detail) {
    Timer t;
    Model m = traingate();
    bool ok = true;
    for (const auto& model : {sub_model(m, "Gate"), sub_model(m, "Train0"), m}) {
        CheckReport r = check_symbolic_soundness_completeness(model.composition, model.domains);
        ok &= expect(r.pass, detail, model.automata.size() == 1
                                         ? model.automata[0]->name + ": " + r.counterexample
                                         : "train-gate: " + r.counterexample);
    }
    GenParams params = random_check_params();
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Model rm = generate_model(seed, params);
        if (rm.domains.universe_size() > 200) {
            ok &= expect(false, detail, "generated universe exceeds 200 valuations");
            continue;
        }
        CheckReport r = check_symbolic_soundness_completeness(rm.composition, rm.domains);
        ok &= expect(r.pass, detail,
                     "seed " + std::to_string(seed) + ": " + r.counterexample);
    }
    ok &= expect(t.seconds() < 60.0, detail, "suite exceeded 60 s");
    return ok;
}

bool criterion_linear_symbolic(std::string& detail) {
    Model m = traingate();
    bool ok = true;
    for (const auto& model : {sub_model(m, "Gate"), sub_model(m, "Train0"), m}) {
        CheckReport r = check_lits_soundness_completeness(model.composition);
        ok &= expect(r.pass, detail, r.counterexample);
    }
    GenParams params = random_check_params();
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Model rm = generate_model(seed, params);
        CheckReport r = check_lits_soundness_completeness(rm.composition);
        ok &= expect(r.pass, detail,
                     "seed " + std::to_string(seed) + ": " + r.counterexample);
    }
    return ok;
}

bool criterion_linearization_correct(std::string& detail) {
    Timer t;
    Model m = traingate();
    CheckReport r = check_correctness_of_linearization(m.composition, m, m.domains);
    bool ok = expect(r.pass, detail, "train-gate: " + r.counterexample);

    GenParams params = random_check_params();
    params.max_universe = 24;
    params.max_automata = 2;
    params.max_edges = 3;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Model rm = generate_model(seed, params);
        CheckReport rr = check_correctness_of_linearization(rm.composition, rm, rm.domains);
        ok &= expect(rr.pass, detail,
                     "seed " + std::to_string(seed) + ": " + rr.counterexample);
        ok &= expect(rr.counterexample.find("routes disagree") == std::string::npos, detail,
                     "seed " + std::to_string(seed) + ": routes disagree");
    }
    ok &= expect(t.seconds() < 120.0, detail, "suite exceeded 120 s");
    return ok;
}

// ---- criterion 9: fault sensitivity ------------------------------------

bool criterion_fault_sensitivity(std::string& detail) {
    Model m = traingate();
    bool ok = true;

    {  // symbolic side: invariant of C damaged to n == 1
        Model g = sub_model(m, "Gate");
        VerifyOptions opts;
        PredPtr wrong = parse_predicate("n == 1", m);
        Conj right = Conj::from(parse_predicate("n == 0", m));
        opts.mutate_sts = [&](Sts& sts) {
            for (auto& e : sts.action_edges)
                if (e.n == right) e.n = Conj::from(wrong);
        };
        CheckReport r = check_symbolic_soundness_completeness(g.composition, g.domains, opts);
        ok &= expect(!r.pass, detail, "mutated symbolic check still passes");
        ok &= expect(!r.counterexample.empty(), detail, "mutated symbolic check lacks a "
                                                        "counterexample");
    }
    {  // LiTS side: one non-wild-card target location flipped
        VerifyOptions opts;
        opts.mutate_lits = [](Lits& lits) {
            for (auto& t : lits.transitions)
                for (std::size_t i = 0; i < t.target.size(); ++i) {
                    if (!t.target[i]) continue;
                    for (const auto& loc : lits.statics.automata[i]->locations)
                        if (loc != *t.target[i]) {
                            t.target[i] = loc;
                            return;
                        }
                }
        };
        CheckReport r = check_lits_soundness_completeness(m.composition, opts);
        ok &= expect(!r.pass, detail, "mutated LiTS check still passes");
        ok &= expect(!r.counterexample.empty(), detail, "mutated LiTS check lacks a "
                                                        "counterexample");
    }
    {  // linearization side: one pointer-update conjunct deleted
        VerifyOptions opts;
        opts.mutate_linearization = [](LinearizationResult& res) {
            auto mutated = std::make_shared<Automaton>(*res.automaton);
            for (auto& e : mutated->edges) {
                std::vector<PredPtr> kept;
                bool dropped = false;
                Conj reset_conj = Conj::from(e.reset);
                for (const auto& item : reset_conj.items()) {
                    if (!dropped && item->kind == Pred::Kind::Cmp &&
                        item->lhs->kind == Expr::Kind::Var && item->lhs->var.primed &&
                        item->lhs->var.name == "l0") {
                        dropped = true;
                        continue;
                    }
                    kept.push_back(item);
                }
                if (dropped) {
                    e.reset = conjoin(kept);
                    res.automaton = mutated;
                    return;
                }
            }
        };
        CheckReport r = check_correctness_of_linearization(m.composition, m, m.domains, opts);
        ok &= expect(!r.pass, detail, "mutated linearization check still passes");
        ok &= expect(!r.counterexample.empty(), detail, "mutated linearization check lacks "
                                                        "a counterexample");
    }
    return ok;
}

// ---- criterion 10: CLI determinism -------------------------------------

bool run_to_file(const std::string& cmd, const fs::path& out) {
    std::string full = cmd + " > " + out.string() + " 2>&1";
    return std::system(full.c_str()) == 0;
}

bool criterion_determinism(std::string& detail) {
    if (g_bin.empty()) {
        detail = "no --bin passed; cannot exercise the CLI";
        return false;
    }
    fs::path dir = fs::temp_directory_path() / "ciflin-acceptance";
    fs::create_directories(dir);
    std::string model = std::string(CIFLIN_MODELS_DIR) + "/traingate.cif";

    bool ok = true;
    for (const std::string& sub :
         {std::string("verify ") + model + " --seed 0",
          std::string("linearize ") + model,
          std::string("linearize ") + model + " --simplify --format json"}) {
        fs::path a = dir / "run_a.txt";
        fs::path b = dir / "run_b.txt";
        ok &= expect(run_to_file(g_bin + " " + sub, a), detail,
                     "command failed: " + sub);
        ok &= expect(run_to_file(g_bin + " " + sub, b), detail,
                     "command failed: " + sub);
        if (!ok) break;
        ok &= expect(read_file(a.string()) == read_file(b.string()), detail,
                     "outputs differ between runs of: " + sub);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--bin") g_bin = argv[i + 1];

    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "train-gate pruned STS has exactly 16 states (< 1 s)", criterion_sts_size},
        {2, "known STS fragment labels match structurally", criterion_fig3_fragment},
        {3, "LiTS has 12 transitions and contains the reference linear edges",
         criterion_lits_and_fig4},
        {4, "linear init(x)/inv(x) match their simplified forms over the bounded domain "
            "(< 5 s)",
         criterion_linear_predicates},
        {5, "transition-count prediction exact on 50 seeded compositions",
         criterion_size_prediction},
        {6, "symbolic-explicit dual enumeration equal on gate, train, train-gate and 25 "
            "seeds (< 60 s)",
         criterion_symbolic_explicit},
        {7, "LiTS expansion reproduces the STS transition sets on the same model set",
         criterion_linear_symbolic},
        {8, "linearized models are stateless-bisimilar to their sources (< 120 s)",
         criterion_linearization_correct},
        {9, "every checker fails on its documented injected fault",
         criterion_fault_sensitivity},
        {10, "verify and linearize are byte-deterministic", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        Timer t;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = t.seconds();
        char line[160];
        std::snprintf(line, sizeof(line), "%s %2d. %s (%.2f s)", ok ? "PASS" : "FAIL", c.id,
                      c.name, secs);
        std::cout << line << "\n";
        if (!ok) {
            std::cout << "        " << detail << "\n";
            ++failures;
        }
    }
    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " criterion(s) failed\n";
    return 1;
}
