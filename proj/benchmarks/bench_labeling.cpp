#include <benchmark/benchmark.h>

#include "qlabel/labeling.hpp"
#include "qlabel/oracle.hpp"
#include "qlabel/simulate.hpp"
#include "support/test_support.hpp"

using namespace qlabel;

static void BM_EigHermitian(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const HermitianOperator a(testing::random_hermitian(dim, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(a));
    }
}
BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_MinErrorBinary(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Observable obs = testing::random_binary_observable(dim, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_error_binary(obs));
    }
}
BENCHMARK(BM_MinErrorBinary)->Arg(2)->Arg(4)->Arg(8);

static void BM_Choi(benchmark::State& state) {
    const Observable obs =
        testing::random_observable(static_cast<int>(state.range(0)), 4, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(choi(obs));
    }
}
BENCHMARK(BM_Choi)->Arg(2)->Arg(4)->Arg(6);

static void BM_OracleSearch(benchmark::State& state) {
    const Observable obs = testing::random_binary_observable(2, 4);
    const ProbeCandidateSet candidates =
        sample_probes(2, static_cast<int>(state.range(0)), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            oracle_min_error_binary(obs.effect(0), obs.effect(1), candidates));
    }
}
BENCHMARK(BM_OracleSearch)->Arg(200)->Arg(2000);

static void BM_SampleProbes(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_probes(2, static_cast<int>(state.range(0)), 6));
    }
}
BENCHMARK(BM_SampleProbes)->Arg(2000);

static void BM_SimulateLabeling(benchmark::State& state) {
    const Observable obs = testing::random_binary_observable(2, 7);
    const LabelingReport r = min_error_binary(obs);
    const Permutation hidden = Permutation::identity(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate_labeling(obs, hidden, *r.probe, *r.decision_rule, state.range(0), 8));
    }
}
BENCHMARK(BM_SimulateLabeling)->Arg(10000)->Arg(100000);

static void BM_VerifyReport(benchmark::State& state) {
    const Observable obs = testing::random_binary_observable(2, 9);
    const LabelingReport r = min_error_binary(obs);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_report(obs, r, state.range(0), 10));
    }
}
BENCHMARK(BM_VerifyReport)->Arg(100000);

BENCHMARK_MAIN();
