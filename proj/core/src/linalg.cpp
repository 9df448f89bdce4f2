#include "qlabel/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace qlabel {

void require_finite(const Matrix& a, const char* what) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Complex& z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InvalidOperator(std::string(what) + ": non-finite entry at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix m, double hermiticity_tol) : mat_(std::move(m)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) {
        throw InvalidOperator("HermitianOperator: matrix must be square and nonempty");
    }
    require_finite(mat_, "HermitianOperator");
    const double dev = max_abs(mat_ - mat_.adjoint());
    if (dev > hermiticity_tol) {
        throw InvalidOperator("HermitianOperator: |A - A^dagger| = " + std::to_string(dev) +
                              " exceeds tolerance " + std::to_string(hermiticity_tol));
    }
}

Vector canonical_phase(Vector v) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > best) {
            best = m;
            pivot = i;
        }
    }
    if (best <= 0.0) return v;
    const Complex z = v(pivot);
    v *= std::conj(z) / std::abs(z);
    return v;
}

EigenSystem eig_hermitian(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error("eig_hermitian: eigensolver failed to converge");
    }
    EigenSystem es;
    es.eigenvalues = solver.eigenvalues();
    es.eigenvectors = solver.eigenvectors();
    for (Eigen::Index c = 0; c < es.eigenvectors.cols(); ++c) {
        es.eigenvectors.col(c) = canonical_phase(es.eigenvectors.col(c));
    }
    return es;
}

bool is_psd(const HermitianOperator& a, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("is_psd: eigensolver failed to converge");
    }
    return solver.eigenvalues().minCoeff() >= -tol;
}

std::vector<Vector> kernel(const HermitianOperator& a, double rank_tol) {
    const EigenSystem es = eig_hermitian(a);
    const double scale = std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
    const double threshold = rank_tol * scale;
    std::vector<Vector> basis;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        if (std::abs(es.eigenvalues(i)) <= threshold) {
            basis.push_back(es.eigenvectors.col(i));
        }
    }
    return basis;
}

double spectral_norm(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw InvalidOperator("spectral_norm: matrix must be square");
    }
    require_finite(a, "spectral_norm");
    if (max_abs(a) == 0.0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    require_finite(a, "tensor");
    require_finite(b, "tensor");
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix& a, const std::vector<int>& subsystem_dims, int traced_index) {
    if (a.rows() != a.cols()) {
        throw DimensionError("partial_trace: operator must be square");
    }
    require_finite(a, "partial_trace");
    long total = 1;
    for (int d : subsystem_dims) {
        if (d <= 0) throw DimensionError("partial_trace: subsystem dimensions must be positive");
        total *= d;
    }
    if (total != a.rows()) {
        throw DimensionError("partial_trace: subsystem dimensions do not factor the operator");
    }
    const int m = static_cast<int>(subsystem_dims.size());
    if (traced_index < 0 || traced_index >= m) {
        throw DimensionError("partial_trace: traced index out of range");
    }

    std::vector<long> stride(m, 1);
    for (int i = m - 2; i >= 0; --i) stride[i] = stride[i + 1] * subsystem_dims[i + 1];
    std::vector<int> kept;
    for (int i = 0; i < m; ++i) {
        if (i != traced_index) kept.push_back(i);
    }
    const long out_dim = total / subsystem_dims[traced_index];

    // Map a row-major multi-index over the kept factors plus a value of the
    // traced digit back to a flat index over the full space.
    auto expand = [&](long kept_flat, long traced_digit) {
        long full = traced_digit * stride[traced_index];
        for (int idx = static_cast<int>(kept.size()) - 1; idx >= 0; --idx) {
            const int i = kept[idx];
            full += (kept_flat % subsystem_dims[i]) * stride[i];
            kept_flat /= subsystem_dims[i];
        }
        return full;
    };

    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (long r = 0; r < out_dim; ++r) {
        for (long c = 0; c < out_dim; ++c) {
            Complex sum{0.0, 0.0};
            for (long k = 0; k < subsystem_dims[traced_index]; ++k) {
                sum += a(expand(r, k), expand(c, k));
            }
            out(r, c) = sum;
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    require_finite(a, "transpose");
    return a.transpose();
}

}  // namespace qlabel
