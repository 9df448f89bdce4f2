#include "doctest.h"

#include <cmath>

#include "qlabel/labeling.hpp"
#include "qlabel/oracle.hpp"
#include "qlabel/simulate.hpp"
#include "support/test_support.hpp"

using namespace qlabel;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Observable intro_example() {
    return Observable({"red", "green"}, {diag2(0.7, 0.0), diag2(0.3, 1.0)});
}

Observable full_rank_pair() {
    return Observable({"a", "b"}, {diag2(0.8, 0.4), diag2(0.2, 0.6)});
}

}  // namespace

TEST_CASE("sample_probes is deterministic and respects its preconditions") {
    const ProbeCandidateSet a = sample_probes(2, 5, 42);
    const ProbeCandidateSet b = sample_probes(2, 5, 42);
    REQUIRE(a.states.size() == 5);
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        CHECK(max_abs(a.states[i] - b.states[i]) == 0.0);
        CHECK(a.states[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(a.provenance == ProbeProvenance::random_seeded);

    const ProbeCandidateSet single = sample_probes(3, 1, 0);
    CHECK(single.states.size() == 1);
    CHECK(single.states[0].size() == 3);

    CHECK_THROWS_AS(sample_probes(1, 5, 0), DimensionError);
    CHECK_THROWS_AS(sample_probes(2, 0, 0), Error);
}

TEST_CASE("sample_probes is uniform: first-component weight averages 1/2 on qubits") {
    const ProbeCandidateSet set = sample_probes(2, 10000, 7);
    double mean = 0.0;
    for (const Vector& v : set.states) mean += std::norm(v(0));
    mean /= static_cast<double>(set.states.size());
    CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("oracle matches the analytic minimum error with eigenvector candidates") {
    const Observable obs = full_rank_pair();
    ProbeCandidateSet candidates = sample_probes(2, 50, 1);
    candidates = augment_with_difference_eigenvectors(std::move(candidates), obs.effect(0),
                                                      obs.effect(1));
    CHECK(candidates.provenance == ProbeProvenance::eigenvector_augmented);
    const double oracle = oracle_min_error_binary(obs.effect(0), obs.effect(1), candidates);
    CHECK(std::abs(oracle - *min_error_binary(obs).p_error) <= 1e-12);
    CHECK(oracle == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("oracle on trivial effects is probe independent") {
    const Observable coin = testing::coin_tossing(0.75);
    const ProbeCandidateSet any = sample_probes(2, 3, 9);
    CHECK(oracle_min_error_binary(coin.effect(0), coin.effect(1), any) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("oracle reaches zero on the intro example once e2 is a candidate") {
    const Observable obs = intro_example();
    Vector e2(2);
    e2 << 0.0, 1.0;
    ProbeCandidateSet set = sample_probes(2, 3, 2);
    set.states.push_back(e2);
    CHECK(oracle_min_error_binary(obs.effect(0), obs.effect(1), set) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(oracle_min_error_binary(obs.effect(0), obs.effect(1), ProbeCandidateSet{}),
                    Error);
}

TEST_CASE("random-probe-only oracle converges from above") {
    int hits = 0;
    const int runs = 30;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const Observable obs = testing::random_binary_observable(2, seed + 1000);
        const ProbeCandidateSet random_only = sample_probes(2, 2000, seed);
        const double oracle =
            oracle_min_error_binary(obs.effect(0), obs.effect(1), random_only);
        const double analytic = *min_error_binary(obs).p_error;
        CHECK(oracle >= analytic - 1e-12);
        if (oracle - analytic <= 5e-3) ++hits;
    }
    CHECK(hits >= runs - 1);
}

TEST_CASE("simulate_labeling: perfect strategy never errs") {
    const Observable obs = intro_example();
    const LabelingReport r = perfect_binary(obs);
    const SimulationResult sim = simulate_labeling(obs, Permutation({1, 0}), *r.probe,
                                                   *r.decision_rule, 100000, 3);
    CHECK(sim.empirical_error_rate == 0.0);
    CHECK(sim.empirical_failure_rate == 0.0);
    CHECK(sim.std_error == 0.0);
}

TEST_CASE("simulate_labeling: optimal strategy lands near the analytic error") {
    const Observable obs = full_rank_pair();
    const LabelingReport r = min_error_binary(obs);
    for (const Permutation& hidden : {Permutation::identity(2), Permutation({1, 0})}) {
        const SimulationResult sim =
            simulate_labeling(obs, hidden, *r.probe, *r.decision_rule, 100000, 4);
        CHECK(std::abs(sim.empirical_error_rate - 0.2) <= 4.0 * sim.std_error);
    }
}

TEST_CASE("simulate_labeling validates its inputs") {
    const Observable obs = full_rank_pair();
    const LabelingReport r = min_error_binary(obs);
    CHECK_THROWS_AS(
        simulate_labeling(obs, Permutation({1, 0}), *r.probe, DecisionRule{0}, 10, 0),
        DimensionError);
    CHECK_THROWS_AS(
        simulate_labeling(obs, Permutation({1, 2, 0}), *r.probe, *r.decision_rule, 10, 0),
        PermutationError);
}

TEST_CASE("simulate_labeling counts abstentions as failures") {
    const Observable obs = full_rank_pair();
    const LabelingReport r = min_error_binary(obs);
    const DecisionRule abstain{kInconclusive, kInconclusive};
    const SimulationResult sim =
        simulate_labeling(obs, Permutation::identity(2), *r.probe, abstain, 5000, 5);
    CHECK(sim.empirical_failure_rate == 1.0);
    CHECK(sim.empirical_error_rate == 0.0);
}

TEST_CASE("simulation results are bit-for-bit deterministic") {
    const Observable obs = full_rank_pair();
    const LabelingReport r = min_error_binary(obs);
    const SimulationResult a =
        simulate_labeling(obs, Permutation::identity(2), *r.probe, *r.decision_rule, 20000, 11);
    const SimulationResult b =
        simulate_labeling(obs, Permutation::identity(2), *r.probe, *r.decision_rule, 20000, 11);
    CHECK(a.empirical_error_rate == b.empirical_error_rate);
    CHECK(a.empirical_failure_rate == b.empirical_failure_rate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.algorithm == rng::kAlgorithm);
}

TEST_CASE("verify_report passes perfect and min-error reports") {
    const VerificationResult perfect =
        verify_report(intro_example(), perfect_binary(intro_example()), 100000, 6);
    CHECK(perfect.passed);
    CHECK(perfect.simulation.empirical_error_rate == 0.0);

    const VerificationResult min_err =
        verify_report(full_rank_pair(), min_error_binary(full_rank_pair()), 100000, 7);
    CHECK(min_err.passed);
    CHECK(std::abs(min_err.simulation.empirical_error_rate - 0.2) <= min_err.error_margin);
}

TEST_CASE("verify_report fails a corrupted report") {
    LabelingReport r = min_error_binary(full_rank_pair());
    r.p_error = *r.p_error + 0.1;
    const VerificationResult vr = verify_report(full_rank_pair(), r, 100000, 8);
    CHECK_FALSE(vr.passed);
}

TEST_CASE("verify_report: a constant verdict is a fair coin under the uniform prior") {
    LabelingReport guess = min_error_binary(full_rank_pair());
    guess.decision_rule = DecisionRule{0, 1};  // always claim the identity labeling
    guess.p_error = 0.5;
    const VerificationResult vr = verify_report(full_rank_pair(), guess, 100000, 9);
    CHECK(vr.passed);
    CHECK(std::abs(vr.simulation.empirical_error_rate - 0.5) <= vr.error_margin);
}

TEST_CASE("verify_report passes vacuously when nothing is executable") {
    const Matrix half = 0.5 * Matrix::Identity(2, 2);
    const Observable trivial({"a", "b"}, {half, half});
    const VerificationResult vr = verify_report(trivial, min_error_binary(trivial), 1000, 0);
    CHECK(vr.passed);
    CHECK(vr.simulation.trials == 0);

    const Observable generic = testing::random_observable(3, 2, 5);
    const VerificationResult plan_vr = verify_report(generic, sequential_plan(generic), 1000, 0);
    CHECK(plan_vr.passed);
}

TEST_CASE("verify_report covers antilabel reports") {
    const Observable trine = testing::qubit_trine();
    const LabelingReport r = antilabel(trine, 1);
    const VerificationResult vr = verify_report(trine, r, 100000, 10);
    CHECK(vr.passed);
    CHECK(vr.simulation.empirical_error_rate == 0.0);  // excluded outcome never fires
}

TEST_CASE("verify_report converges for optimal strategies on random observables") {
    int passes = 0;
    const int runs = 20;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const Observable obs = testing::random_binary_observable(2 + seed % 3, seed + 50);
        const VerificationResult vr =
            verify_report(obs, min_error_binary(obs), 100000, seed);
        if (vr.passed) ++passes;
    }
    CHECK(passes >= runs - 1);
}
