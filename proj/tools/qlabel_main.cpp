// qlabel — command-line front end: parse a POVM file, run one labeling
// analysis, print a text or JSON report.
//
// Exit codes: 0 analysis completed (including "infeasible" verdicts),
// 1 invalid input (file, JSON, schema, POVM, or command misuse),
// 2 internal numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qlabel/io.hpp"
#include "qlabel/labeling.hpp"
#include "qlabel/oracle.hpp"
#include "qlabel/povm.hpp"
#include "qlabel/simulate.hpp"
#include "qlabel/tester.hpp"
#include "qlabel/version.hpp"

using nlohmann::json;
using namespace qlabel;

namespace {

// Command misuse distinct from library errors: always exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input_path;
    double tol = 1e-9;
    double rank_tol = 1e-9;
    std::optional<int> effect_index;  // 1-based on the command line
    int samples = 2000;
    long long trials = 100000;
    std::uint64_t seed = 0;
    std::vector<int> permutation;  // 1-based one-line notation
    std::string format = "text";
};

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

json complex_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(complex_json(m(r, c)));
    }
    return out;
}

json probe_json(const ProbeState& probe) {
    json out;
    if (probe.is_pure()) {
        out["type"] = "pure";
        out["vector"] = vector_json(probe.vector());
    } else {
        out["type"] = "mixed";
        out["matrix"] = matrix_json(probe.density());
    }
    return out;
}

std::string probe_text(const ProbeState& probe) {
    if (!probe.is_pure()) return "mixed state (see JSON output)";
    std::string out = "[";
    const Vector& v = probe.vector();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += fmt6(v(i).real());
        if (v(i).imag() != 0.0) out += (v(i).imag() > 0 ? "+" : "") + fmt6(v(i).imag()) + "i";
    }
    return out + "]";
}

// Indices are 1-based in all user-facing output; 0 marks "inconclusive".
json rule_json(const DecisionRule& rule) {
    json out = json::array();
    for (int a : rule) out.push_back(a == kInconclusive ? 0 : a + 1);
    return out;
}

json report_json(const LabelingReport& r) {
    json out;
    out["mode"] = to_string(r.mode);
    out["feasible"] = r.feasible;
    out["trivial"] = r.trivial;
    out["p_error"] = r.p_error ? json(*r.p_error) : json(nullptr);
    out["p_failure"] = r.p_failure ? json(*r.p_failure) : json(nullptr);
    out["probe"] = r.probe ? probe_json(*r.probe) : json(nullptr);
    out["decision_rule"] = r.decision_rule ? rule_json(*r.decision_rule) : json(nullptr);
    json excluded = json::array();
    for (int k : r.excluded_effects) excluded.push_back(k + 1);
    out["excluded_effects"] = std::move(excluded);
    json plan = json::array();
    for (const PlanStep& step : r.plan) {
        json s;
        s["probe"] = probe_json(step.probe);
        json cls = json::array();
        for (int k : step.outcome_class) cls.push_back(k + 1);
        s["outcome_class"] = std::move(cls);
        s["effect_index"] = step.effect_index + 1;
        plan.push_back(std::move(s));
    }
    out["plan"] = std::move(plan);
    out["min_uses_bound"] = r.min_uses_bound;
    out["fully_labelable"] = r.fully_labelable;
    out["tol"] = r.tol;
    out["rank_tol"] = r.rank_tol;
    out["note"] = r.note;
    return out;
}

json classes_json(const std::vector<PartialClassReport>& classes) {
    json out = json::array();
    for (const PartialClassReport& c : classes) {
        json jc;
        json idx = json::array();
        for (int k : c.outcome_class) idx.push_back(k + 1);
        jc["outcomes"] = std::move(idx);
        jc["lambda_max"] = c.lambda_max;
        jc["target"] = c.target;
        jc["feasible"] = c.feasible;
        jc["probe"] = c.probe ? probe_json(*c.probe) : json(nullptr);
        jc["leakage"] = c.leakage;
        out.push_back(std::move(jc));
    }
    return out;
}

// The tester realizing a binary strategy, in the POVM complex encoding.
json tester_json(const Tester& t) {
    json out;
    out["probe"] = matrix_json(t.probe.matrix());
    json elements = json::array();
    for (const HermitianOperator& e : t.elements) elements.push_back(matrix_json(e.matrix()));
    out["elements"] = std::move(elements);
    return out;
}

// For feasible binary strategies the report's probe and rule determine a
// two-element tester; attach it so the JSON report is self-contained.
void attach_tester(json& report, const Observable& obs, const LabelingReport& r) {
    if (obs.outcomes() != 2 || !r.feasible || r.trivial || !r.probe || !r.decision_rule) return;
    report["tester"] = tester_json(binary_rule_tester(r.probe->density(), *r.decision_rule));
}

json simulation_json(const SimulationResult& s) {
    json out;
    out["trials"] = s.trials;
    out["empirical_error_rate"] = s.empirical_error_rate;
    out["empirical_failure_rate"] = s.empirical_failure_rate;
    out["std_error"] = s.std_error;
    out["seed"] = s.seed;
    out["algorithm"] = s.algorithm;
    return out;
}

json envelope(const RunConfig& cfg) {
    json out;
    out["tool"] = kToolName;
    out["version"] = kVersion;
    out["command"] = cfg.command;
    out["input"] = cfg.input_path;
    out["tol"] = cfg.tol;
    out["rank_tol"] = cfg.rank_tol;
    out["seed"] = cfg.seed;
    return out;
}

void emit(const json& doc) {
    std::cout << doc.dump(2) << "\n";
}

void print_report_text(const LabelingReport& r) {
    std::cout << to_string(r.mode) << " labeling: "
              << (r.feasible ? (r.trivial ? "trivially labeled" : "feasible") : "infeasible")
              << "\n";
    if (r.p_error) std::cout << "  p_error: " << fmt6(*r.p_error) << "\n";
    if (r.p_failure) std::cout << "  p_failure: " << fmt6(*r.p_failure) << "\n";
    if (r.probe) std::cout << "  probe (pure): " << probe_text(*r.probe) << "\n";
    if (r.decision_rule) {
        const DecisionRule& rule = *r.decision_rule;
        const bool constant =
            std::all_of(rule.begin(), rule.end(), [&](int a) { return a == rule.front(); });
        if (constant && rule.front() != kInconclusive) {
            std::cout << "  decision rule: recorded outcome -> effect " << rule.front() + 1 << "\n";
        } else {
            std::cout << "  decision rule (position -> effect):";
            for (std::size_t p = 0; p < rule.size(); ++p) {
                std::cout << " " << p + 1 << "->"
                          << (rule[p] == kInconclusive ? std::string("?")
                                                       : std::to_string(rule[p] + 1));
            }
            std::cout << "\n";
        }
    }
    if (!r.excluded_effects.empty()) {
        std::cout << "  excluded effects:";
        for (int k : r.excluded_effects) std::cout << " " << k + 1;
        std::cout << "\n";
    }
    if (r.mode == LabelingMode::sequential) {
        std::cout << "  classes: " << r.classes.size() << ", min uses bound: " << r.min_uses_bound
                  << ", fully labelable: " << (r.fully_labelable ? "yes" : "no") << "\n";
        for (std::size_t i = 0; i < r.plan.size(); ++i) {
            const PlanStep& step = r.plan[i];
            std::cout << "  step " << i + 1 << ": probe " << probe_text(step.probe)
                      << " labels outcomes {";
            for (std::size_t j = 0; j < step.outcome_class.size(); ++j) {
                std::cout << (j ? "," : "") << step.outcome_class[j] + 1;
            }
            std::cout << "} as effect " << step.effect_index + 1 << "\n";
        }
    }
    if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
}

Permutation permutation_from_config(const RunConfig& cfg, int n) {
    if (cfg.permutation.empty()) {
        throw UsageError("this command requires --permutation i1,i2,...");
    }
    if (static_cast<int>(cfg.permutation.size()) != n) {
        throw PermutationError("--permutation must list " + std::to_string(n) +
                               " entries for this observable");
    }
    std::vector<int> zero_based;
    for (int v : cfg.permutation) zero_based.push_back(v - 1);
    return Permutation(std::move(zero_based));
}

void require_binary_input(const Observable& obs, const std::string& command) {
    if (obs.outcomes() != 2) {
        throw WrongArity(command + " requires a binary observable; use `plan`, `partial`, or "
                         "`min-error` for non-binary input");
    }
}

int run(const RunConfig& cfg) {
    const bool as_json = cfg.format == "json";

    if (cfg.command == "validate") {
        // parse_povm throws PovmValidationError listing every violated
        // invariant; the handler in main prints them and exits 1.
        Observable obs = io::parse_povm(cfg.input_path, cfg.tol);
        if (as_json) {
            json doc = envelope(cfg);
            doc["valid"] = true;
            doc["dimension"] = obs.dim();
            doc["outcomes"] = obs.outcomes();
            emit(doc);
        } else {
            std::cout << "valid POVM: " << obs.outcomes() << " outcomes, dimension " << obs.dim()
                      << "\n";
        }
        return 0;
    }

    const Observable obs = io::parse_povm(cfg.input_path, cfg.tol);
    json doc = envelope(cfg);

    if (cfg.command == "perfect" || cfg.command == "unambiguous") {
        require_binary_input(obs, cfg.command);
        const LabelingReport r = cfg.command == "perfect"
                                     ? perfect_binary(obs, cfg.rank_tol)
                                     : unambiguous_binary(obs, cfg.rank_tol);
        if (as_json) {
            doc["report"] = report_json(r);
            attach_tester(doc["report"], obs, r);
            emit(doc);
        } else {
            print_report_text(r);
        }
        return 0;
    }

    if (cfg.command == "min-error") {
        const LabelingReport r =
            obs.outcomes() == 2 ? min_error_binary(obs) : partial_min_error(obs);
        if (as_json) {
            doc["report"] = report_json(r);
            attach_tester(doc["report"], obs, r);
            emit(doc);
        } else {
            print_report_text(r);
        }
        return 0;
    }

    if (cfg.command == "partial") {
        const auto classes = partial_label(obs, cfg.tol);
        if (as_json) {
            doc["classes"] = classes_json(classes);
            emit(doc);
        } else {
            std::cout << "partial labeling classes: " << classes.size() << "\n";
            for (const PartialClassReport& c : classes) {
                std::cout << "  outcomes {";
                for (std::size_t j = 0; j < c.outcome_class.size(); ++j) {
                    std::cout << (j ? "," : "") << c.outcome_class[j] + 1;
                }
                std::cout << "}: lambda_max " << fmt6(c.lambda_max) << ", target " << fmt6(c.target)
                          << (c.feasible ? ", feasible" : ", infeasible");
                if (c.probe) std::cout << ", probe " << probe_text(*c.probe);
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (cfg.command == "antilabel") {
        if (!cfg.effect_index) throw UsageError("antilabel requires --effect J (1-based)");
        const LabelingReport r = antilabel(obs, *cfg.effect_index - 1, cfg.rank_tol);
        if (as_json) {
            doc["report"] = report_json(r);
            emit(doc);
        } else {
            print_report_text(r);
        }
        return 0;
    }

    if (cfg.command == "plan") {
        const LabelingReport r = sequential_plan(obs, cfg.tol);
        if (as_json) {
            doc["report"] = report_json(r);
            doc["classes"] = classes_json(r.classes);
            emit(doc);
        } else {
            print_report_text(r);
        }
        return 0;
    }

    if (cfg.command == "oracle") {
        require_binary_input(obs, cfg.command);
        const LabelingReport analytic = min_error_binary(obs);
        ProbeCandidateSet candidates = sample_probes(obs.dim(), cfg.samples, cfg.seed);
        candidates = augment_with_difference_eigenvectors(std::move(candidates), obs.effect(0),
                                                          obs.effect(1));
        const double oracle_value =
            oracle_min_error_binary(obs.effect(0), obs.effect(1), candidates);
        const double analytic_value = analytic.p_error.value_or(0.0);
        const std::string scope = "search over pure ancilla-free probes";
        if (as_json) {
            doc["analytic_p_error"] = analytic_value;
            doc["oracle_p_error"] = oracle_value;
            doc["gap"] = oracle_value - analytic_value;
            doc["candidates"] = candidates.states.size();
            doc["provenance"] = to_string(candidates.provenance);
            doc["scope"] = scope;
            doc["trivial"] = analytic.trivial;
            emit(doc);
        } else {
            std::cout << "analytic p_error: " << fmt6(analytic_value) << "\n"
                      << "oracle p_error:   " << fmt6(oracle_value) << " ("
                      << candidates.states.size() << " candidates, "
                      << to_string(candidates.provenance) << ", " << scope << ")\n"
                      << "gap:              " << fmt6(oracle_value - analytic_value) << "\n";
            if (analytic.trivial) {
                std::cout << "note: effects are identical; the analytic value uses the trivial "
                             "branch, not the norm formula\n";
            }
        }
        return 0;
    }

    if (cfg.command == "simulate") {
        const LabelingReport strategy = best_single_shot(obs, cfg.rank_tol);
        if (!strategy.probe || !strategy.decision_rule) {
            throw UsageError(
                "no executable single-shot strategy for this observable (trivial case)");
        }
        const Permutation hidden = permutation_from_config(cfg, obs.outcomes());
        const SimulationResult sim = simulate_labeling(obs, hidden, *strategy.probe,
                                                       *strategy.decision_rule, cfg.trials,
                                                       cfg.seed);
        if (as_json) {
            doc["report"] = report_json(strategy);
            doc["simulation"] = simulation_json(sim);
            emit(doc);
        } else {
            print_report_text(strategy);
            std::cout << "simulation (" << sim.trials << " trials, seed " << sim.seed << ", "
                      << sim.algorithm << "):\n"
                      << "  empirical error rate:   " << fmt6(sim.empirical_error_rate) << "\n"
                      << "  empirical failure rate: " << fmt6(sim.empirical_failure_rate) << "\n"
                      << "  std error:              " << fmt6(sim.std_error) << "\n";
        }
        return 0;
    }

    if (cfg.command == "verify") {
        const LabelingReport strategy = best_single_shot(obs, cfg.rank_tol);
        const VerificationResult vr = verify_report(obs, strategy, cfg.trials, cfg.seed);
        if (as_json) {
            doc["report"] = report_json(strategy);
            doc["verification"] = {
                {"passed", vr.passed},
                {"expected_error", vr.expected_error},
                {"expected_failure", vr.expected_failure},
                {"error_margin", vr.error_margin},
                {"failure_margin", vr.failure_margin},
                {"note", vr.note},
                {"simulation", simulation_json(vr.simulation)},
            };
            emit(doc);
        } else {
            print_report_text(strategy);
            std::cout << "verification: " << (vr.passed ? "PASS" : "FAIL") << "\n"
                      << "  empirical error rate " << fmt6(vr.simulation.empirical_error_rate)
                      << " vs expected " << fmt6(vr.expected_error) << " (margin "
                      << fmt6(vr.error_margin) << ")\n"
                      << "  empirical failure rate " << fmt6(vr.simulation.empirical_failure_rate)
                      << " vs expected " << fmt6(vr.expected_failure) << " (margin "
                      << fmt6(vr.failure_margin) << ")\n";
            if (!vr.note.empty()) std::cout << "  note: " << vr.note << "\n";
        }
        return 0;
    }

    throw Error("unknown command: " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qlabel: single-shot labeling analysis for quantum observables (POVMs)"};
    app.require_subcommand(1);

    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> descriptions = {
        {"validate", "check a POVM file against every invariant"},
        {"perfect", "single-shot perfect labeling of a binary observable"},
        {"min-error", "minimum-error labeling (binary) or recorded-outcome labeling (n >= 3)"},
        {"partial", "per-class one-shot perfect labeling of the recorded outcome"},
        {"unambiguous", "binary unambiguous labeling (reduces to perfect labeling)"},
        {"antilabel", "exclude effects for the recorded outcome (requires --effect)"},
        {"plan", "multi-use sequential labeling plan and lower bound"},
        {"oracle", "brute-force probe search cross-checking the analytic minimum error"},
        {"simulate", "Monte Carlo run under a fixed hidden labeling (requires --permutation)"},
        {"verify", "Monte Carlo check of the optimal strategy, uniform hidden labeling"},
    };
    for (const auto& [name, help] : descriptions) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input_path, "POVM JSON file")->required();
        sub->add_option("--tol", cfg.tol, "validation/feasibility tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--rank-tol", cfg.rank_tol, "kernel rank tolerance")
            ->check(CLI::PositiveNumber);
        if (name == "antilabel") {
            sub->add_option("--effect", cfg.effect_index, "1-based effect index to antilabel");
        }
        sub->add_option("--samples", cfg.samples, "random probe candidates for the oracle")
            ->check(CLI::PositiveNumber);
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "64-bit RNG seed");
        if (name == "simulate") {
            sub->add_option("--permutation", cfg.permutation,
                            "hidden labeling, 1-based one-line notation")
                ->delimiter(',');
        }
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help is a success; misuse is input error
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const PovmValidationError& e) {
        std::cout << "invalid POVM:\n" << e.diagnostics.to_string();
        return 1;
    } catch (const io::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const io::SchemaError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const io::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const WrongArity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PermutationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
