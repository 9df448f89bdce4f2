#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "qlabel/errors.hpp"

namespace qlabel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Maximum accepted |A - A^dagger| entry for Hermitian inputs.
inline constexpr double kHermitianTol = 1e-10;
// Default tolerance for positivity / normalization checks.
inline constexpr double kDefaultTol = 1e-9;
// Default rank tolerance, relative to the spectral norm (floored at 1).
inline constexpr double kDefaultRankTol = 1e-9;

// Throws InvalidOperator if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);

// Largest |entry| of a (0 for an empty matrix).
double max_abs(const Matrix& a);

// Square complex matrix validated Hermitian at construction. Construction
// rejects rather than symmetrizes: callers must fix their data.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m, double hermiticity_tol = kHermitianTol);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }

private:
    Matrix mat_;
};

// Full spectral decomposition. Eigenvalues ascending; eigenvector columns are
// orthonormal and aligned with the eigenvalues. Phases are canonical (the
// first largest-magnitude component of each column is real positive) so a
// fixed input always yields the same output.
struct EigenSystem {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

EigenSystem eig_hermitian(const HermitianOperator& a);

// True iff the minimum eigenvalue is >= -tol.
bool is_psd(const HermitianOperator& a, double tol = kDefaultTol);

// Orthonormal basis of the near-null eigenspace: eigenvalues with
// |lambda| <= rank_tol * max(1, spectral norm). Empty result means full rank.
std::vector<Vector> kernel(const HermitianOperator& a, double rank_tol = kDefaultRankTol);

// Largest singular value. For Hermitian input this equals max |eigenvalue|.
double spectral_norm(const Matrix& a);

// Kronecker product; the first factor is the most significant index.
Matrix tensor(const Matrix& a, const Matrix& b);

// Trace out factor `traced_index` of an operator acting on the tensor product
// of subsystems with the given dimensions (first factor most significant).
Matrix partial_trace(const Matrix& a, const std::vector<int>& subsystem_dims, int traced_index);

Matrix transpose(const Matrix& a);

// Rotate v by a global phase so its first largest-magnitude component is
// real positive. Zero vectors are returned unchanged.
Vector canonical_phase(Vector v);

}  // namespace qlabel
