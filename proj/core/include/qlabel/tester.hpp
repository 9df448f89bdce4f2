#pragma once

#include <string>
#include <vector>

#include "qlabel/povm.hpp"

namespace qlabel {

// Process tester: positive elements T_alpha on the system (x) outcome space
// summing to the normalization probe (x) identity. The probe xi is stored
// explicitly rather than recovered from the element sum; validate_tester
// cross-checks consistency. Elements use the same layout as ChoiOperator
// (outcome register most significant), so the normalization reads
// sum_alpha T_alpha = I_n (x) xi in matrix form. Physically, xi is the
// transpose of the state entering the unlabeled device.
struct Tester {
    HermitianOperator probe;                   // xi, d x d
    std::vector<HermitianOperator> elements;   // each (n*d) x (n*d)
    int system_dim;
    int outcome_dim;
};

struct TesterIssue {
    enum class Kind { ProbeNotState, NotPositive, NotNormalized, DimensionMismatch };
    Kind kind;
    int index = -1;  // element index, -1 when not applicable
    double deviation = 0.0;
    std::string message;
};

const char* to_string(TesterIssue::Kind kind);

struct TesterDiagnostics {
    std::vector<TesterIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has(TesterIssue::Kind kind) const;
    std::string to_string() const;
};

TesterDiagnostics validate_tester(const Tester& t, double tol = kDefaultTol);

// Measure-and-prepare block form: blocks[k][alpha] = H_k^(alpha), with the
// per-outcome normalization sum_alpha H_k^(alpha) = probe for every k.
struct MPTesterBlocks {
    HermitianOperator probe;
    std::vector<std::vector<HermitianOperator>> blocks;
};

// Assembles T_alpha = sum_k |x_k><x_k| (x) H_k^(alpha). Throws InvalidBlocks
// if any block is negative or a row fails its normalization.
Tester tester_from_blocks(const MPTesterBlocks& b, double tol = kDefaultTol);

// Tester executing a binary decision rule with the given (physical) probe
// state: element 0 is the verdict "identity labeling", element 1 the swap.
// rule[p] is the effect index claimed when position p is recorded; the
// verdict at p is "identity" exactly when rule[p] == p. Blocks carry the
// transpose of the probe density, matching the tester normalization.
Tester binary_rule_tester(const Matrix& probe_density, const std::vector<int>& rule);

// Born-like outcome probability tr[choi * element].
double born_probability(const ChoiOperator& choi_op, const HermitianOperator& element);

// p(sigma | sigma') = tr[choi(permute(obs, sigma)) * T_{sigma'}]. Rows are
// indexed by the given permutations, columns by the first permutations.size()
// tester elements; one extra element (the inconclusive one) is allowed and
// simply absorbs the row deficit.
Eigen::MatrixXd conditional_probability_matrix(const Observable& obs,
                                               const std::vector<Permutation>& permutations,
                                               const Tester& t);

}  // namespace qlabel
