#pragma once

#include <cstdint>
#include <string>

#include "qlabel/labeling.hpp"

namespace qlabel {

struct SimulationResult {
    long long trials = 0;
    double empirical_error_rate = 0.0;
    double empirical_failure_rate = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/trials) for the error rate
    std::uint64_t seed = 0;
    std::string algorithm;  // RNG algorithm id, for reproducibility
};

// Monte Carlo run of the single-shot experiment under a fixed hidden
// labeling: each trial measures the probe, records the outcome of the
// permuted observable, applies the decision rule, and counts errors
// (assigned effect differs from the true one at the recorded position) and
// failures (rule abstains). Bit-for-bit deterministic given the seed.
SimulationResult simulate_labeling(const Observable& obs, const Permutation& hidden,
                                   const ProbeState& probe, const DecisionRule& rule,
                                   long long trials, std::uint64_t seed);

struct VerificationResult {
    bool passed = false;
    SimulationResult simulation;
    double expected_error = 0.0;
    double expected_failure = 0.0;
    double error_margin = 0.0;    // 4 * std_error of the error rate
    double failure_margin = 0.0;  // 4 * std_error of the failure rate
    std::string note;
};

// Replays a report's strategy with the hidden labeling drawn uniformly at
// random each trial; passes when both empirical rates land within 4 standard
// errors of the reported values. Reports without an executable single-shot
// strategy (trivial, infeasible, sequential) pass vacuously. A failed check
// is a result, not an error.
VerificationResult verify_report(const Observable& obs, const LabelingReport& report,
                                 long long trials, std::uint64_t seed);

}  // namespace qlabel
