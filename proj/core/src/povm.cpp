#include "qlabel/povm.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qlabel {

const char* to_string(Issue::Kind kind) {
    switch (kind) {
        case Issue::Kind::NotPositive: return "NotPositive";
        case Issue::Kind::NotNormalized: return "NotNormalized";
        case Issue::Kind::DimensionMismatch: return "DimensionMismatch";
        case Issue::Kind::DuplicateLabel: return "DuplicateLabel";
        case Issue::Kind::TooFewOutcomes: return "TooFewOutcomes";
    }
    return "Unknown";
}

bool Diagnostics::has(Issue::Kind kind) const {
    return std::any_of(issues.begin(), issues.end(),
                       [kind](const Issue& i) { return i.kind == kind; });
}

std::string Diagnostics::to_string() const {
    std::ostringstream out;
    for (const Issue& issue : issues) {
        out << qlabel::to_string(issue.kind) << ": " << issue.message << "\n";
    }
    return out.str();
}

PovmValidationError::PovmValidationError(Diagnostics d)
    : Error("invalid POVM:\n" + d.to_string()), diagnostics(std::move(d)) {}

namespace {

bool entries_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

}  // namespace

Diagnostics validate_povm(const std::vector<Matrix>& effects,
                          const std::vector<std::string>& labels, double tol) {
    Diagnostics diag;
    const int n = static_cast<int>(effects.size());

    if (labels.size() != effects.size()) {
        diag.issues.push_back({Issue::Kind::DimensionMismatch, -1,
                               static_cast<double>(labels.size()),
                               "label count (" + std::to_string(labels.size()) +
                                   ") does not match effect count (" + std::to_string(n) + ")"});
    }
    if (n < 2) {
        diag.issues.push_back({Issue::Kind::TooFewOutcomes, -1, static_cast<double>(n),
                               "an observable needs at least 2 outcomes, got " + std::to_string(n)});
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j]) {
                diag.issues.push_back({Issue::Kind::DuplicateLabel, static_cast<int>(j), 0.0,
                                       "label \"" + labels[j] + "\" appears at positions " +
                                           std::to_string(i + 1) + " and " + std::to_string(j + 1)});
            }
        }
    }

    const int d = n > 0 ? static_cast<int>(effects[0].rows()) : 0;
    bool dims_ok = n > 0 && d > 0;
    for (int k = 0; k < n; ++k) {
        if (effects[k].rows() != effects[k].cols() || effects[k].rows() != d) {
            diag.issues.push_back({Issue::Kind::DimensionMismatch, k, 0.0,
                                   "effect " + std::to_string(k + 1) + " is " +
                                       std::to_string(effects[k].rows()) + "x" +
                                       std::to_string(effects[k].cols()) +
                                       ", expected " + std::to_string(d) + "x" + std::to_string(d)});
            dims_ok = false;
        }
    }
    if (!dims_ok) return diag;

    for (int k = 0; k < n; ++k) {
        if (!entries_finite(effects[k])) {
            diag.issues.push_back({Issue::Kind::NotPositive, k, 0.0,
                                   "effect " + std::to_string(k + 1) + " has non-finite entries"});
            continue;
        }
        const double herm_dev = max_abs(effects[k] - effects[k].adjoint());
        if (herm_dev > kHermitianTol) {
            diag.issues.push_back({Issue::Kind::NotPositive, k, herm_dev,
                                   "effect " + std::to_string(k + 1) +
                                       " is not Hermitian (deviation " + std::to_string(herm_dev) + ")"});
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(effects[k], Eigen::EigenvaluesOnly);
        const double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -tol) {
            diag.issues.push_back({Issue::Kind::NotPositive, k, -min_eig,
                                   "effect " + std::to_string(k + 1) +
                                       " has negative eigenvalue " + std::to_string(min_eig)});
        }
    }

    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& m : effects) sum += m;
    const double norm_dev = max_abs(sum - Matrix::Identity(d, d));
    if (!(norm_dev <= tol)) {
        diag.issues.push_back({Issue::Kind::NotNormalized, -1, norm_dev,
                               "effects sum deviates from the identity by " + std::to_string(norm_dev)});
    }
    return diag;
}

Observable::Observable(std::vector<std::string> labels, std::vector<Matrix> effects, double tol)
    : labels_(std::move(labels)), dim_(0), tol_(tol) {
    Diagnostics diag = validate_povm(effects, labels_, tol);
    if (!diag.ok()) throw PovmValidationError(std::move(diag));
    dim_ = static_cast<int>(effects[0].rows());
    effects_.reserve(effects.size());
    for (Matrix& m : effects) effects_.emplace_back(std::move(m));
}

Permutation::Permutation(std::vector<int> one_line) : map_(std::move(one_line)) {
    const int n = static_cast<int>(map_.size());
    if (n == 0) throw PermutationError("empty permutation");
    std::vector<char> seen(n, 0);
    for (int v : map_) {
        if (v < 0 || v >= n || seen[v]) {
            throw PermutationError("mapping is not a bijection on {0,...," + std::to_string(n - 1) + "}");
        }
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = i;
    return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (int k = 0; k < size(); ++k) inv[map_[k]] = k;
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
    if (inner.size() != size()) throw PermutationError("composition size mismatch");
    std::vector<int> out(map_.size());
    for (int k = 0; k < size(); ++k) out[k] = map_[inner(k)];
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
    for (int k = 0; k < size(); ++k) {
        if (map_[k] != k) return false;
    }
    return true;
}

Matrix permutation_matrix(const Permutation& sigma) {
    const int n = sigma.size();
    Matrix p = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) p(sigma(k), k) = Complex{1.0, 0.0};
    return p;
}

ChoiOperator choi(const Observable& obs) {
    const int d = obs.dim();
    const int n = obs.outcomes();
    Matrix m = Matrix::Zero(d * n, d * n);
    for (int k = 0; k < n; ++k) {
        m.block(k * d, k * d, d, d) = obs.effect_matrix(k).transpose();
    }
    return ChoiOperator{d, n, HermitianOperator(std::move(m))};
}

Observable permute(const Observable& obs, const Permutation& sigma) {
    if (sigma.size() != obs.outcomes()) {
        throw PermutationError("permutation acts on " + std::to_string(sigma.size()) +
                               " elements, observable has " + std::to_string(obs.outcomes()));
    }
    std::vector<Matrix> effects(obs.outcomes());
    for (int k = 0; k < obs.outcomes(); ++k) effects[sigma(k)] = obs.effect_matrix(k);
    return Observable(obs.labels(), std::move(effects), obs.tol());
}

bool choi_conjugation_check(const Observable& obs, const Permutation& sigma, double tol) {
    const Matrix lhs = choi(permute(obs, sigma)).matrix.matrix();
    const Matrix u = tensor(permutation_matrix(sigma), Matrix::Identity(obs.dim(), obs.dim()));
    const Matrix rhs = u * choi(obs).matrix.matrix() * u.adjoint();
    return max_abs(lhs - rhs) <= tol;
}

Observable binarize(const Observable& obs, int outcome_index) {
    if (obs.outcomes() < 3) {
        throw WrongArity("binarize: observable must have at least 3 outcomes");
    }
    if (outcome_index < 0 || outcome_index >= obs.outcomes()) {
        throw std::out_of_range("binarize: outcome index " + std::to_string(outcome_index + 1) +
                                " out of range 1.." + std::to_string(obs.outcomes()));
    }
    const Matrix& kept = obs.effect_matrix(outcome_index);
    Matrix rest = Matrix::Identity(obs.dim(), obs.dim()) - kept;
    return Observable({obs.label(outcome_index), "not:" + obs.label(outcome_index)},
                      {kept, std::move(rest)}, obs.tol());
}

std::vector<std::vector<int>> multiplicity_classes(const Observable& obs, double tol) {
    std::vector<std::vector<int>> classes;
    for (int k = 0; k < obs.outcomes(); ++k) {
        bool placed = false;
        for (auto& cls : classes) {
            if (max_abs(obs.effect_matrix(k) - obs.effect_matrix(cls.front())) <= tol) {
                cls.push_back(k);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({k});
    }
    return classes;
}

}  // namespace qlabel
