#include "ciflin/errors.hpp"
#include "ciflin/export.hpp"
#include "ciflin/generator.hpp"
#include "ciflin/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ciflin;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << content;
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string ts_text(const TransitionSystem& ts) {
    std::string out = "states: " + std::to_string(ts.states.size()) + "\n";
    for (std::size_t i = 0; i < ts.states.size(); ++i)
        out += "  " + std::to_string(i) + ": " + ts.states[i] + "\n";
    out += "edges: " + std::to_string(ts.edges.size()) + "\n";
    for (const auto& e : ts.edges)
        out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
               (e.dashed ? "  ~~ " : "  -- ") + e.label + "\n";
    if (ts.truncated) out += "(truncated: state bound reached)\n";
    return out;
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "text";
};

void add_io(CLI::App* cmd, CommonOpts& io, const std::vector<std::string>& formats,
            bool model_required = true) {
    auto* model = cmd->add_option("model", io.input, "model file");
    if (model_required) model->required();
    cmd->add_option("-o,--output", io.output, "output path (default stdout)")
        ->envname("CIFLIN_OUTPUT");
    std::string help = "output format:";
    for (const auto& f : formats) help += " " + f;
    cmd->add_option("--format", io.format, help)
        ->check(CLI::IsMember(formats))
        ->envname("CIFLIN_FORMAT");
}

int run(int argc, char** argv) {
    CLI::App app{"linearization toolkit for a small automata language"};
    app.require_subcommand(1);

    CommonOpts parse_io, explicit_io, sts_io, lits_io, lin_io, verify_io, size_io;

    auto* cmd_parse = app.add_subcommand("parse", "parse a model and echo it normalized");
    add_io(cmd_parse, parse_io, {"text", "json"});

    auto* cmd_explicit =
        app.add_subcommand("explicit", "explicit LTS from the model's initial valuations");
    add_io(cmd_explicit, explicit_io, {"text", "json", "dot"});
    std::size_t bound = 20000;
    cmd_explicit->add_option("--bound", bound, "state bound")->envname("CIFLIN_BOUND");

    auto* cmd_sts = app.add_subcommand("sts", "symbolic transition system");
    add_io(cmd_sts, sts_io, {"text", "json", "dot"});
    bool prune = true;
    cmd_sts->add_flag("--prune,!--no-prune", prune, "drop transitions with a false init conjunct")
        ->envname("CIFLIN_PRUNE");

    auto* cmd_lits = app.add_subcommand("lits", "linear transition system");
    add_io(cmd_lits, lits_io, {"text", "json", "dot"});

    auto* cmd_lin = app.add_subcommand("linearize", "single-automaton linear form");
    lin_io.format = "dsl";
    add_io(cmd_lin, lin_io, {"dsl", "json", "dot"});
    bool simplify = false;
    cmd_lin->add_flag("--simplify", simplify, "constant-fold predicates for readability")
        ->envname("CIFLIN_SIMPLIFY");

    auto* cmd_verify = app.add_subcommand("verify", "run all correspondence checks");
    add_io(cmd_verify, verify_io, {"text", "json"}, /*model_required=*/false);
    std::uint64_t seed = 0;
    std::size_t random_models = 0;
    bool timings = false;
    std::size_t max_universe = 50000, max_states = 20000;
    cmd_verify->add_option("--seed", seed, "seed for --random")->envname("CIFLIN_SEED");
    cmd_verify->add_option("--random", random_models, "also check N generated models")
        ->envname("CIFLIN_RANDOM");
    cmd_verify->add_flag("--timings", timings, "include wall times in reports")
        ->envname("CIFLIN_TIMINGS");
    cmd_verify->add_option("--max-universe", max_universe, "valuation budget")
        ->envname("CIFLIN_MAX_UNIVERSE");
    cmd_verify->add_option("--max-states", max_states, "term-graph budget")
        ->envname("CIFLIN_MAX_STATES");
    std::string replay_path;
    cmd_verify->add_option("--replay", replay_path,
                           "re-run the failing checks of a verify JSON report");

    auto* cmd_size = app.add_subcommand("size", "transition-count prediction vs the LiTS");
    add_io(cmd_size, size_io, {"text", "json"});
    std::string size_action;
    cmd_size->add_option("--action", size_action, "the synchronizing action (auto-detected "
                                                  "when every automaton agrees)")
        ->envname("CIFLIN_ACTION");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (cmd_parse->parsed()) {
        Model m = load_model(parse_io.input);
        if (parse_io.format == "json")
            write_output(parse_io.output, model_to_json(m).dump(2) + "\n");
        else
            write_output(parse_io.output, print_model(m));
        return kExitOk;
    }

    if (cmd_explicit->parsed()) {
        Model m = load_model(explicit_io.input);
        TermPtr t = Term::of(m.composition);
        std::vector<Valuation> init = initial_valuations(t, m.domains);
        ExplicitLts lts = build_explicit_lts(t, init, m.domains, bound);
        if (explicit_io.format == "json")
            write_output(explicit_io.output, explicit_lts_to_json(lts).dump(2) + "\n");
        else if (explicit_io.format == "dot")
            write_output(explicit_io.output,
                         explicit_lts(t, init, m.domains, bound).to_dot("explicit_lts"));
        else
            write_output(explicit_io.output, ts_text(explicit_lts(t, init, m.domains, bound)));
        return lts.truncated ? kExitBudget : kExitOk;
    }

    if (cmd_sts->parsed()) {
        Model m = load_model(sts_io.input);
        Sts sts = build_sts(m.composition, prune);
        if (sts_io.format == "json")
            write_output(sts_io.output, sts_to_json(sts).dump(2) + "\n");
        else if (sts_io.format == "dot")
            write_output(sts_io.output, sts_to_ts(sts).to_dot("sts"));
        else
            write_output(sts_io.output, ts_text(sts_to_ts(sts)));
        return kExitOk;
    }

    if (cmd_lits->parsed()) {
        Model m = load_model(lits_io.input);
        Lits lits = build_lits(m.composition);
        if (lits_io.format == "json")
            write_output(lits_io.output, lits_to_json(lits).dump(2) + "\n");
        else if (lits_io.format == "dot")
            write_output(lits_io.output, lits_to_ts(lits).to_dot("lits"));
        else
            write_output(lits_io.output, ts_text(lits_to_ts(lits)));
        return kExitOk;
    }

    if (cmd_lin->parsed()) {
        Model m = load_model(lin_io.input);
        LinearizationResult res = linearize(m.composition, m);
        if (lin_io.format == "json")
            write_output(lin_io.output, linearization_to_json(res).dump(2) + "\n");
        else if (lin_io.format == "dot") {
            TransitionSystem ts;
            ts.states.push_back(res.location);
            for (const auto& e : res.automaton->edges)
                ts.edges.push_back({0, 0, e.action + ", " + to_string(e.reset), false});
            write_output(lin_io.output, ts.to_dot("linear_automaton"));
        } else {
            write_output(lin_io.output, print_model(linearized_model(res, m, simplify)));
        }
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        VerifyOptions opts;
        opts.max_universe = max_universe;
        opts.max_states = max_states;

        std::vector<CheckReport> reports;
        std::string model_path = verify_io.input;

        if (!replay_path.empty()) {
            // Replay: re-run exactly the failed checks recorded in an
            // earlier JSON report. Checks are deterministic, so the same
            // counterexamples are rediscovered and reprinted.
            Json rep = Json::parse(read_file(replay_path));
            model_path = rep.at("model").get<std::string>();
            Model base = load_model(model_path);
            for (const auto& jc : rep.at("checks")) {
                if (jc.at("pass").get<bool>()) continue;
                std::string name = jc.at("check").get<std::string>();
                Model target = base;
                std::string tag;
                std::size_t at = name.find(" [seed ");
                if (at != std::string::npos) {
                    std::uint64_t rs = std::stoull(name.substr(at + 7));
                    GenParams gp;
                    gp.max_universe = 36;
                    target = generate_model(rs, gp);
                    tag = name.substr(at);
                }
                CheckReport r;
                if (name.rfind("symbolic-explicit", 0) == 0)
                    r = check_symbolic_soundness_completeness(target.composition,
                                                              target.domains, opts);
                else if (name.rfind("linear-symbolic", 0) == 0)
                    r = check_lits_soundness_completeness(target.composition, opts);
                else
                    r = check_correctness_of_linearization(target.composition, target,
                                                           target.domains, opts);
                r.name += tag + " [replayed]";
                reports.push_back(std::move(r));
            }
            if (reports.empty()) {
                write_output(verify_io.output, "nothing to replay: the report has no "
                                               "failing checks\n");
                return kExitOk;
            }
        } else {
            if (model_path.empty()) {
                std::cerr << "verify: a model file (or --replay report.json) is required\n";
                return kExitUsage;
            }
            Model m = load_model(model_path);
            reports.push_back(
                check_symbolic_soundness_completeness(m.composition, m.domains, opts));
            reports.push_back(check_lits_soundness_completeness(m.composition, opts));
            reports.push_back(
                check_correctness_of_linearization(m.composition, m, m.domains, opts));

            GenParams gp;
            gp.max_universe = 36;
            for (std::size_t i = 0; i < random_models; ++i) {
                Model rm = generate_model(seed + i, gp);
                std::string tag = " [seed " + std::to_string(seed + i) + "]";
                CheckReport r1 =
                    check_symbolic_soundness_completeness(rm.composition, rm.domains, opts);
                r1.name += tag;
                CheckReport r2 = check_lits_soundness_completeness(rm.composition, opts);
                r2.name += tag;
                CheckReport r3 =
                    check_correctness_of_linearization(rm.composition, rm, rm.domains, opts);
                r3.name += tag;
                reports.push_back(std::move(r1));
                reports.push_back(std::move(r2));
                reports.push_back(std::move(r3));
            }
        }

        bool all_pass = true, budget = false;
        for (const auto& r : reports) {
            all_pass = all_pass && r.pass;
            budget = budget || r.budget_exceeded;
        }

        std::string content;
        if (verify_io.format == "json") {
            Json out;
            out["model"] = verify_io.input;
            out["seed"] = seed;
            Json checks = Json::array();
            for (const auto& r : reports) checks.push_back(report_to_json(r, timings));
            out["checks"] = std::move(checks);
            out["pass"] = all_pass;
            content = out.dump(2) + "\n";
        } else {
            for (const auto& r : reports) content += report_to_text(r, timings) + "\n";
            content += all_pass ? "all checks passed\n" : "some checks FAILED\n";
        }
        write_output(verify_io.output, content);
        if (budget) return kExitBudget;
        return all_pass ? kExitOk : kExitCheckFailed;
    }

    if (cmd_size->parsed()) {
        Model m = load_model(size_io.input);
        std::string action = size_action;
        if (action.empty()) {
            // Auto-detect: usable when every automaton has the same
            // singleton sync set.
            for (const auto& a : m.automata) {
                if (a->sync_actions.size() != 1) {
                    std::cerr << "size: pass --action; sync sets are not singletons\n";
                    return kExitUsage;
                }
                std::string s = *a->sync_actions.begin();
                if (action.empty()) action = s;
                else if (action != s) {
                    std::cerr << "size: pass --action; automata disagree on the sync action\n";
                    return kExitUsage;
                }
            }
        }
        SizePrediction pred = predict_size(m.composition, action);
        if (!pred.hypothesis_ok) {
            std::cerr << "size: hypothesis violated: " << pred.reason << "\n";
            return kExitUsage;
        }
        std::size_t actual = lits_action_transitions(m.composition).size();
        if (size_io.format == "json") {
            Json out;
            out["action"] = action;
            out["predicted"] = pred.predicted;
            out["actual"] = actual;
            out["match"] = pred.predicted == actual;
            write_output(size_io.output, out.dump(2) + "\n");
        } else {
            write_output(size_io.output,
                         "action " + action + ": predicted " + std::to_string(pred.predicted) +
                             ", actual " + std::to_string(actual) +
                             (pred.predicted == actual ? " (match)\n" : " (MISMATCH)\n"));
        }
        return pred.predicted == actual ? kExitOk : kExitCheckFailed;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ciflin::ParseError& e) {
        std::cerr << e.pretty() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
