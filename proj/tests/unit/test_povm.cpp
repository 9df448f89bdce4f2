#include "doctest.h"

#include <cmath>

#include "qlabel/povm.hpp"
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

}  // namespace

TEST_CASE("validate accepts the intro example") {
    const auto diag = validate_povm({diag2(0.7, 0.0), diag2(0.3, 1.0)}, {"red", "green"}, 1e-9);
    CHECK(diag.ok());
    CHECK_NOTHROW(intro_example());
}

TEST_CASE("validate flags a non-normalized pair") {
    const auto diag = validate_povm({Matrix::Identity(2, 2), Matrix::Identity(2, 2)},
                                    {"a", "b"}, 1e-9);
    REQUIRE_FALSE(diag.ok());
    CHECK(diag.has(Issue::Kind::NotNormalized));
    CHECK_FALSE(diag.has(Issue::Kind::NotPositive));
}

TEST_CASE("validate flags exactly the negative effect") {
    const auto diag = validate_povm({diag2(1.1, 0.5), diag2(-0.1, 0.5)}, {"a", "b"}, 1e-9);
    REQUIRE_FALSE(diag.ok());
    REQUIRE(diag.has(Issue::Kind::NotPositive));
    CHECK_FALSE(diag.has(Issue::Kind::NotNormalized));  // the pair sums to I
    for (const Issue& issue : diag.issues) {
        if (issue.kind == Issue::Kind::NotPositive) {
            CHECK(issue.index == 1);  // 0-based: the second effect
            CHECK(issue.message.find("effect 2") != std::string::npos);
        }
    }
}

TEST_CASE("validate reports multiple issues at once") {
    const auto diag = validate_povm({diag2(1.1, 0.5), diag2(-0.1, 0.6)}, {"a", "a"}, 1e-9);
    CHECK(diag.has(Issue::Kind::NotPositive));
    CHECK(diag.has(Issue::Kind::NotNormalized));
    CHECK(diag.has(Issue::Kind::DuplicateLabel));
}

TEST_CASE("validate rejects single-outcome observables") {
    const auto diag = validate_povm({Matrix::Identity(2, 2)}, {"only"}, 1e-9);
    CHECK(diag.has(Issue::Kind::TooFewOutcomes));
    CHECK_THROWS_AS(Observable({"only"}, {Matrix::Identity(2, 2)}), PovmValidationError);
}

TEST_CASE("validate flags dimension mismatches") {
    Matrix m3 = Matrix::Identity(3, 3);
    const auto diag = validate_povm({diag2(0.5, 0.5), m3}, {"a", "b"}, 1e-9);
    CHECK(diag.has(Issue::Kind::DimensionMismatch));
}

TEST_CASE("choi operator is block diagonal with transposed effect blocks") {
    const Observable obs = intro_example();
    const ChoiOperator c = choi(obs);
    CHECK(c.system_dim == 2);
    CHECK(c.outcome_dim == 2);
    const Matrix& m = c.matrix.matrix();
    CHECK(max_abs(m.block(0, 0, 2, 2) - obs.effect_matrix(0).transpose()) < 1e-12);
    CHECK(max_abs(m.block(2, 2, 2, 2) - obs.effect_matrix(1).transpose()) < 1e-12);
    CHECK(max_abs(m.block(0, 2, 2, 2)) == 0.0);  // cross blocks vanish
}

TEST_CASE("choi of the coin-tossing observable") {
    const ChoiOperator c = choi(testing::coin_tossing(0.75));
    const Matrix& m = c.matrix.matrix();
    const double expected[4] = {0.75, 0.75, 0.25, 0.25};
    for (int i = 0; i < 4; ++i) {
        CHECK(m(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-12));
    }
    CHECK(max_abs(m - m.diagonal().asDiagonal().toDenseMatrix()) == 0.0);
}

TEST_CASE("choi is PSD with identity partial trace over the outcome register") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Observable obs = testing::random_observable(3, 2, seed);
        const ChoiOperator c = choi(obs);
        CHECK(is_psd(c.matrix, 1e-8));
        const Matrix traced =
            partial_trace(c.matrix.matrix(), {obs.outcomes(), obs.dim()}, 0);
        CHECK(max_abs(traced - Matrix::Identity(obs.dim(), obs.dim())) < 1e-8);
    }
}

TEST_CASE("permute moves effects, keeps labels on positions") {
    const Observable obs = intro_example();
    const Observable same = permute(obs, Permutation::identity(2));
    CHECK(max_abs(same.effect_matrix(0) - obs.effect_matrix(0)) == 0.0);
    CHECK(same.labels() == obs.labels());

    const Observable swapped = permute(obs, Permutation({1, 0}));
    CHECK(max_abs(swapped.effect_matrix(0) - obs.effect_matrix(1)) == 0.0);
    CHECK(max_abs(swapped.effect_matrix(1) - obs.effect_matrix(0)) == 0.0);
    CHECK(swapped.labels() == obs.labels());

    CHECK_THROWS_AS(permute(obs, Permutation({1, 2, 0})), PermutationError);
}

TEST_CASE("three-cycle applied three times is the identity") {
    const Observable obs = testing::random_observable(3, 2, 42);
    const Permutation cycle({1, 2, 0});
    Observable rotated = permute(permute(permute(obs, cycle), cycle), cycle);
    for (int k = 0; k < 3; ++k) {
        CHECK(max_abs(rotated.effect_matrix(k) - obs.effect_matrix(k)) < 1e-12);
    }
}

TEST_CASE("permute is a group action") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Observable obs = testing::random_observable(4, 2, seed);
        const Permutation sigma = testing::random_permutation_of(4, seed, 1);
        const Permutation tau = testing::random_permutation_of(4, seed, 2);
        const Observable lhs = permute(permute(obs, sigma), tau);
        const Observable rhs = permute(obs, tau.compose(sigma));
        for (int k = 0; k < 4; ++k) {
            CHECK(max_abs(lhs.effect_matrix(k) - rhs.effect_matrix(k)) < 1e-12);
        }
    }
}

TEST_CASE("choi conjugation identity") {
    const Observable obs = intro_example();
    CHECK(choi_conjugation_check(obs, Permutation::identity(2)));
    CHECK(choi_conjugation_check(obs, Permutation({1, 0})));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Observable random3 = testing::random_observable(3, 2, seed);
        const Permutation sigma = testing::random_permutation_of(3, seed);
        CHECK(choi_conjugation_check(random3, sigma));
        // non-involutive case pins down the sigma-vs-inverse convention
        CHECK(choi_conjugation_check(random3, Permutation({1, 2, 0})));
    }
}

TEST_CASE("binarize") {
    const Observable obs =
        Observable({"a", "b", "c"}, {diag2(1, 0), diag2(0, 0.5), diag2(0, 0.5)});
    const Observable b1 = binarize(obs, 0);
    CHECK(max_abs(b1.effect_matrix(0) - diag2(1, 0)) < 1e-12);
    CHECK(max_abs(b1.effect_matrix(1) - diag2(0, 1)) < 1e-12);

    const Observable b2 = binarize(obs, 1);
    CHECK(max_abs(b2.effect_matrix(0) - diag2(0, 0.5)) < 1e-12);
    CHECK(max_abs(b2.effect_matrix(1) - diag2(1, 0.5)) < 1e-12);

    CHECK_THROWS_AS(binarize(obs, 3), std::out_of_range);
    CHECK_THROWS_AS(binarize(intro_example(), 0), WrongArity);
}

TEST_CASE("binarize output always validates") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Observable obs = testing::random_observable(4, 3, seed);
        for (int j = 0; j < 4; ++j) {
            CHECK_NOTHROW(binarize(obs, j));
        }
    }
}

TEST_CASE("multiplicity classes") {
    const Observable family =
        Observable({"a", "b", "c"}, {diag2(1, 0), diag2(0, 0.5), diag2(0, 0.5)});
    const auto classes = multiplicity_classes(family);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<int>{0});
    CHECK(classes[1] == std::vector<int>{1, 2});

    const auto distinct = multiplicity_classes(intro_example());
    REQUIRE(distinct.size() == 2);

    const Matrix half = 0.5 * Matrix::Identity(2, 2);
    const auto merged = multiplicity_classes(Observable({"a", "b"}, {half, half}));
    REQUIRE(merged.size() == 1);
    CHECK(merged[0] == std::vector<int>{0, 1});
}

TEST_CASE("multiplicity classes split under a tighter tolerance") {
    const Matrix half = 0.5 * Matrix::Identity(2, 2);
    Matrix nudged = half;
    nudged(0, 0) += 1e-6;
    Matrix other = Matrix::Identity(2, 2) - nudged;
    const Observable obs({"a", "b"}, {nudged, other}, 1e-5);
    CHECK(multiplicity_classes(obs, 1e-3).size() == 1);
    CHECK(multiplicity_classes(obs, 1e-9).size() == 2);
}

TEST_CASE("multiplicity classes form a partition") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Observable obs = testing::random_observable(4, 2, seed);
        const auto classes = multiplicity_classes(obs);
        std::vector<int> seen;
        for (const auto& cls : classes) {
            for (int k : cls) seen.push_back(k);
        }
        std::sort(seen.begin(), seen.end());
        CHECK(seen == std::vector<int>{0, 1, 2, 3});
    }
}
