#include "qlabel/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "qlabel/rng.hpp"

namespace qlabel {

namespace {

// Probability that each effect fires on the probe; independent of the hidden
// labeling, which only decides at which position the effect shows up.
std::vector<double> effect_probabilities(const Observable& obs, const Matrix& rho) {
    if (rho.rows() != obs.dim()) {
        throw DimensionError("simulate: probe dimension does not match the observable");
    }
    std::vector<double> p(obs.outcomes());
    double sum = 0.0;
    for (int k = 0; k < obs.outcomes(); ++k) {
        p[k] = (rho * obs.effect_matrix(k)).trace().real();
        if (p[k] < -1e-6) {
            throw InvalidModel("simulate: negative outcome probability " + std::to_string(p[k]));
        }
        p[k] = std::max(p[k], 0.0);
        sum += p[k];
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw InvalidModel("simulate: outcome probabilities sum to " + std::to_string(sum));
    }
    return p;
}

int sample_categorical(const std::vector<double>& p, double u) {
    double cum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        cum += p[k];
        if (u < cum) return static_cast<int>(k);
    }
    return static_cast<int>(p.size()) - 1;
}

double binomial_std_error(double rate, long long trials) {
    return trials > 0 ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials)) : 0.0;
}

}  // namespace

SimulationResult simulate_labeling(const Observable& obs, const Permutation& hidden,
                                   const ProbeState& probe, const DecisionRule& rule,
                                   long long trials, std::uint64_t seed) {
    const int n = obs.outcomes();
    if (hidden.size() != n) {
        throw PermutationError("simulate_labeling: hidden permutation size mismatch");
    }
    if (static_cast<int>(rule.size()) != n) {
        throw DimensionError("simulate_labeling: decision rule covers " +
                             std::to_string(rule.size()) + " positions, observable has " +
                             std::to_string(n));
    }
    if (trials < 1) throw Error("simulate_labeling: trials must be at least 1");

    const std::vector<double> p = effect_probabilities(obs, probe.density());
    long long errors = 0;
    long long failures = 0;
    for (long long t = 0; t < trials; ++t) {
        // Effect k fires with probability tr[rho M_k] and is recorded at
        // position hidden(k); the rule then claims an effect for that position.
        const int k = sample_categorical(p, rng::u01(rng::counter_value(seed, t, 0)));
        const int assigned = rule[hidden(k)];
        if (assigned == kInconclusive) {
            ++failures;
        } else if (assigned != k) {
            ++errors;
        }
    }

    SimulationResult result;
    result.trials = trials;
    result.empirical_error_rate = static_cast<double>(errors) / static_cast<double>(trials);
    result.empirical_failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
    result.std_error = binomial_std_error(result.empirical_error_rate, trials);
    result.seed = seed;
    result.algorithm = rng::kAlgorithm;
    return result;
}

VerificationResult verify_report(const Observable& obs, const LabelingReport& report,
                                 long long trials, std::uint64_t seed) {
    VerificationResult vr;
    vr.expected_error = report.p_error.value_or(0.0);
    vr.expected_failure = report.p_failure.value_or(0.0);

    const bool antilabel_mode = report.mode == LabelingMode::antilabel;
    const bool executable = report.feasible && !report.trivial &&
                            report.mode != LabelingMode::sequential && report.probe.has_value() &&
                            (antilabel_mode ? !report.excluded_effects.empty()
                                            : report.decision_rule.has_value());
    if (!executable) {
        vr.passed = true;
        vr.note = "no executable single-shot strategy to verify";
        vr.simulation.seed = seed;
        vr.simulation.algorithm = rng::kAlgorithm;
        return vr;
    }
    if (trials < 1) throw Error("verify_report: trials must be at least 1");

    const int n = obs.outcomes();
    const std::vector<double> p = effect_probabilities(obs, report.probe->density());
    long long errors = 0;
    long long failures = 0;
    for (long long t = 0; t < trials; ++t) {
        // Hidden labeling uniform over all n! permutations, redrawn per trial
        // (counters 0..n-2 of the trial's stream), then one outcome draw.
        const std::vector<int> sigma = rng::random_permutation(n, seed, t);
        const int k = sample_categorical(p, rng::u01(rng::counter_value(seed, t, n - 1)));
        const int position = sigma[k];
        if (antilabel_mode) {
            errors += std::binary_search(report.excluded_effects.begin(),
                                         report.excluded_effects.end(), k)
                          ? 1
                          : 0;
        } else {
            const int assigned = (*report.decision_rule)[position];
            if (assigned == kInconclusive) {
                ++failures;
            } else if (assigned != k) {
                ++errors;
            }
        }
    }

    vr.simulation.trials = trials;
    vr.simulation.empirical_error_rate = static_cast<double>(errors) / static_cast<double>(trials);
    vr.simulation.empirical_failure_rate =
        static_cast<double>(failures) / static_cast<double>(trials);
    vr.simulation.std_error = binomial_std_error(vr.simulation.empirical_error_rate, trials);
    vr.simulation.seed = seed;
    vr.simulation.algorithm = rng::kAlgorithm;

    vr.error_margin = 4.0 * vr.simulation.std_error;
    vr.failure_margin = 4.0 * binomial_std_error(vr.simulation.empirical_failure_rate, trials);
    const bool error_ok =
        std::abs(vr.simulation.empirical_error_rate - vr.expected_error) <= vr.error_margin;
    const bool failure_ok =
        std::abs(vr.simulation.empirical_failure_rate - vr.expected_failure) <= vr.failure_margin;
    vr.passed = error_ok && failure_ok;
    if (!vr.passed) {
        vr.note = "empirical rates outside 4 standard errors of the reported values";
    }
    return vr;
}

}  // namespace qlabel
