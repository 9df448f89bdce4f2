#pragma once

#include <string>
#include <vector>

#include "qlabel/linalg.hpp"

namespace qlabel {

// One reason a POVM candidate failed validation. Indices are 0-based in the
// struct; messages use the 1-based numbering of user-facing output.
struct Issue {
    enum class Kind {
        NotPositive,
        NotNormalized,
        DimensionMismatch,
        DuplicateLabel,
        TooFewOutcomes,
    };
    Kind kind;
    int index = -1;          // effect/label position, -1 when not applicable
    double deviation = 0.0;  // size of the violation where meaningful
    std::string message;
};

const char* to_string(Issue::Kind kind);

struct Diagnostics {
    std::vector<Issue> issues;
    bool ok() const { return issues.empty(); }
    bool has(Issue::Kind kind) const;
    std::string to_string() const;
};

struct PovmValidationError : Error {
    explicit PovmValidationError(Diagnostics d);
    Diagnostics diagnostics;
};

// Checks every invariant and reports all violations at once: each effect PSD
// within tol, effects summing to the identity within tol entrywise, coherent
// dimensions, distinct labels, and at least two outcomes.
Diagnostics validate_povm(const std::vector<Matrix>& effects,
                          const std::vector<std::string>& labels,
                          double tol = kDefaultTol);

// An n-outcome observable: ordered labels paired with positive effects that
// sum to the identity. Immutable after construction; construction throws
// PovmValidationError carrying the full diagnostics on invalid input.
class Observable {
public:
    Observable(std::vector<std::string> labels, std::vector<Matrix> effects,
               double tol = kDefaultTol);

    int dim() const { return dim_; }
    int outcomes() const { return static_cast<int>(effects_.size()); }
    const HermitianOperator& effect(int k) const { return effects_.at(k); }
    const Matrix& effect_matrix(int k) const { return effects_.at(k).matrix(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int k) const { return labels_.at(k); }
    double tol() const { return tol_; }

private:
    std::vector<std::string> labels_;
    std::vector<HermitianOperator> effects_;
    int dim_;
    double tol_;
};

// Bijection on {0, ..., n-1} in one-line notation: sigma(k) = mapping[k].
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(map_.size()); }
    int operator()(int k) const { return map_.at(k); }
    Permutation inverse() const;
    // (*this) o inner: k -> (*this)(inner(k)).
    Permutation compose(const Permutation& inner) const;
    bool is_identity() const;
    bool operator==(const Permutation& other) const { return map_ == other.map_; }
    const std::vector<int>& one_line() const { return map_; }

private:
    std::vector<int> map_;
};

// P_sigma = sum_k |sigma(k)><k| as an n x n matrix.
Matrix permutation_matrix(const Permutation& sigma);

// Choi operator of the observable's measure-and-prepare channel. Layout: the
// outcome register is the most significant tensor factor, so the matrix is
// block diagonal with the k-th d x d diagonal block equal to M_k^T.
struct ChoiOperator {
    int system_dim;
    int outcome_dim;
    HermitianOperator matrix;
};

ChoiOperator choi(const Observable& obs);

// Observable whose outcome position sigma(k) carries effect M_k. Labels stay
// attached to positions.
Observable permute(const Observable& obs, const Permutation& sigma);

// Self-test: choi(permute(obs, sigma)) must equal the conjugation of
// choi(obs) by the permutation operator on the outcome register.
bool choi_conjugation_check(const Observable& obs, const Permutation& sigma,
                            double tol = kDefaultTol);

// Two-outcome coarse-graining (M_j, I - M_j). Requires n >= 3.
Observable binarize(const Observable& obs, int outcome_index);

// Groups outcome indices whose effects agree entrywise within tol. Greedy
// first-representative grouping; classes ordered by their lowest index.
std::vector<std::vector<int>> multiplicity_classes(const Observable& obs,
                                                   double tol = kDefaultTol);

}  // namespace qlabel
