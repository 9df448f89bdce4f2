#include "qlabel/tester.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlabel {

const char* to_string(TesterIssue::Kind kind) {
    switch (kind) {
        case TesterIssue::Kind::ProbeNotState: return "ProbeNotState";
        case TesterIssue::Kind::NotPositive: return "NotPositive";
        case TesterIssue::Kind::NotNormalized: return "NotNormalized";
        case TesterIssue::Kind::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

bool TesterDiagnostics::has(TesterIssue::Kind kind) const {
    return std::any_of(issues.begin(), issues.end(),
                       [kind](const TesterIssue& i) { return i.kind == kind; });
}

std::string TesterDiagnostics::to_string() const {
    std::ostringstream out;
    for (const TesterIssue& issue : issues) {
        out << qlabel::to_string(issue.kind) << ": " << issue.message << "\n";
    }
    return out.str();
}

namespace {

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace

TesterDiagnostics validate_tester(const Tester& t, double tol) {
    TesterDiagnostics diag;
    const int d = t.system_dim;
    const int n = t.outcome_dim;

    if (t.probe.dim() != d) {
        diag.issues.push_back({TesterIssue::Kind::DimensionMismatch, -1, 0.0,
                               "probe is " + std::to_string(t.probe.dim()) + "-dimensional, expected " +
                                   std::to_string(d)});
        return diag;
    }
    const double trace_dev = std::abs(t.probe.matrix().trace().real() - 1.0) +
                             std::abs(t.probe.matrix().trace().imag());
    const double probe_min = min_eigenvalue(t.probe.matrix());
    if (trace_dev > tol || probe_min < -tol) {
        diag.issues.push_back({TesterIssue::Kind::ProbeNotState, -1, std::max(trace_dev, -probe_min),
                               "probe must be a unit-trace positive operator (trace deviation " +
                                   std::to_string(trace_dev) + ", min eigenvalue " +
                                   std::to_string(probe_min) + ")"});
    }

    bool dims_ok = true;
    for (std::size_t a = 0; a < t.elements.size(); ++a) {
        if (t.elements[a].dim() != d * n) {
            diag.issues.push_back({TesterIssue::Kind::DimensionMismatch, static_cast<int>(a), 0.0,
                                   "element " + std::to_string(a + 1) + " is " +
                                       std::to_string(t.elements[a].dim()) + "-dimensional, expected " +
                                       std::to_string(d * n)});
            dims_ok = false;
        }
    }
    if (!dims_ok) return diag;

    for (std::size_t a = 0; a < t.elements.size(); ++a) {
        const double min_eig = min_eigenvalue(t.elements[a].matrix());
        if (min_eig < -tol) {
            diag.issues.push_back({TesterIssue::Kind::NotPositive, static_cast<int>(a), -min_eig,
                                   "element " + std::to_string(a + 1) + " has negative eigenvalue " +
                                       std::to_string(min_eig)});
        }
    }

    Matrix sum = Matrix::Zero(d * n, d * n);
    for (const HermitianOperator& e : t.elements) sum += e.matrix();
    const Matrix expected = tensor(Matrix::Identity(n, n), t.probe.matrix());
    const double dev = max_abs(sum - expected);
    if (dev > tol) {
        diag.issues.push_back({TesterIssue::Kind::NotNormalized, -1, dev,
                               "element sum deviates from probe (x) identity by " + std::to_string(dev)});
    }
    return diag;
}

Tester tester_from_blocks(const MPTesterBlocks& b, double tol) {
    const int d = b.probe.dim();
    const int n = static_cast<int>(b.blocks.size());
    if (n < 1) throw InvalidBlocks("tester_from_blocks: no outcome rows");
    const std::size_t m = b.blocks.front().size();
    if (m < 1) throw InvalidBlocks("tester_from_blocks: no tester outcomes");

    for (int k = 0; k < n; ++k) {
        if (b.blocks[k].size() != m) {
            throw InvalidBlocks("tester_from_blocks: row " + std::to_string(k + 1) +
                                " has " + std::to_string(b.blocks[k].size()) +
                                " blocks, expected " + std::to_string(m));
        }
        Matrix row_sum = Matrix::Zero(d, d);
        for (std::size_t a = 0; a < m; ++a) {
            const HermitianOperator& h = b.blocks[k][a];
            if (h.dim() != d) {
                throw InvalidBlocks("tester_from_blocks: block (" + std::to_string(k + 1) + "," +
                                    std::to_string(a + 1) + ") has dimension " +
                                    std::to_string(h.dim()) + ", expected " + std::to_string(d));
            }
            if (min_eigenvalue(h.matrix()) < -tol) {
                throw InvalidBlocks("tester_from_blocks: block (" + std::to_string(k + 1) + "," +
                                    std::to_string(a + 1) + ") is not positive");
            }
            row_sum += h.matrix();
        }
        const double dev = max_abs(row_sum - b.probe.matrix());
        if (dev > tol) {
            throw InvalidBlocks("tester_from_blocks: outcome " + std::to_string(k + 1) +
                                " blocks sum deviates from the probe by " + std::to_string(dev));
        }
    }

    std::vector<HermitianOperator> elements;
    elements.reserve(m);
    for (std::size_t a = 0; a < m; ++a) {
        Matrix t = Matrix::Zero(d * n, d * n);
        for (int k = 0; k < n; ++k) {
            t.block(k * d, k * d, d, d) = b.blocks[k][a].matrix();
        }
        elements.emplace_back(std::move(t));
    }
    return Tester{b.probe, std::move(elements), d, n};
}

Tester binary_rule_tester(const Matrix& probe_density, const std::vector<int>& rule) {
    if (rule.size() != 2 || (rule[0] != 0 && rule[0] != 1) || (rule[1] != 0 && rule[1] != 1)) {
        throw DimensionError("binary_rule_tester: rule must assign effect 0 or 1 to each of the "
                             "two positions");
    }
    const Matrix xi = probe_density.transpose();
    const int d = static_cast<int>(xi.rows());
    const HermitianOperator xi_op(xi);
    const HermitianOperator zero{Matrix::Zero(d, d)};
    std::vector<std::vector<HermitianOperator>> blocks;
    for (int p = 0; p < 2; ++p) {
        const bool verdict_id = rule[p] == p;
        blocks.push_back(verdict_id ? std::vector<HermitianOperator>{xi_op, zero}
                                    : std::vector<HermitianOperator>{zero, xi_op});
    }
    return tester_from_blocks(MPTesterBlocks{xi_op, std::move(blocks)});
}

double born_probability(const ChoiOperator& choi_op, const HermitianOperator& element) {
    if (choi_op.matrix.dim() != element.dim()) {
        throw DimensionError("born_probability: Choi operator is " +
                             std::to_string(choi_op.matrix.dim()) + "-dimensional, element is " +
                             std::to_string(element.dim()));
    }
    return (choi_op.matrix.matrix() * element.matrix()).trace().real();
}

Eigen::MatrixXd conditional_probability_matrix(const Observable& obs,
                                               const std::vector<Permutation>& permutations,
                                               const Tester& t) {
    const std::size_t v = permutations.size();
    if (t.elements.size() != v && t.elements.size() != v + 1) {
        throw DimensionError("conditional_probability_matrix: " + std::to_string(t.elements.size()) +
                             " tester elements for " + std::to_string(v) + " permutations");
    }
    Eigen::MatrixXd p(v, v);
    for (std::size_t i = 0; i < v; ++i) {
        const ChoiOperator c = choi(permute(obs, permutations[i]));
        for (std::size_t j = 0; j < v; ++j) {
            p(i, j) = born_probability(c, t.elements[j]);
        }
    }
    return p;
}

}  // namespace qlabel
