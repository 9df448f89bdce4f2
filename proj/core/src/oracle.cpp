#include "qlabel/oracle.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qlabel/rng.hpp"

namespace qlabel {

const char* to_string(ProbeProvenance p) {
    switch (p) {
        case ProbeProvenance::grid: return "grid";
        case ProbeProvenance::random_seeded: return "random-seeded";
        case ProbeProvenance::eigenvector_augmented: return "eigenvector-augmented";
    }
    return "unknown";
}

ProbeCandidateSet sample_probes(int dim, int count, std::uint64_t seed) {
    if (dim < 2) throw DimensionError("sample_probes: dimension must be at least 2");
    if (count < 1) throw Error("sample_probes: count must be at least 1");

    ProbeCandidateSet set;
    set.provenance = ProbeProvenance::random_seeded;
    set.states.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vector v(dim);
        for (int j = 0; j < dim; ++j) {
            const auto g = rng::gaussian_pair(rng::counter_value(seed, i, 2 * j),
                                              rng::counter_value(seed, i, 2 * j + 1));
            v(j) = Complex{g.first, g.second};
        }
        const double norm = v.norm();
        if (norm == 0.0) throw Error("sample_probes: degenerate zero draw");
        set.states.push_back(v / norm);
    }
    return set;
}

ProbeCandidateSet augment_with_difference_eigenvectors(ProbeCandidateSet base,
                                                       const HermitianOperator& m1,
                                                       const HermitianOperator& m2) {
    if (m1.dim() != m2.dim()) {
        throw DimensionError("augment_with_difference_eigenvectors: effect dimensions disagree");
    }
    const EigenSystem es = eig_hermitian(HermitianOperator(m1.matrix() - m2.matrix()));
    for (Eigen::Index c = 0; c < es.eigenvectors.cols(); ++c) {
        base.states.push_back(es.eigenvectors.col(c));
    }
    base.provenance = ProbeProvenance::eigenvector_augmented;
    return base;
}

double oracle_min_error_binary(const HermitianOperator& m1, const HermitianOperator& m2,
                               const ProbeCandidateSet& candidates) {
    if (m1.dim() != m2.dim()) {
        throw DimensionError("oracle_min_error_binary: effect dimensions disagree");
    }
    if (candidates.states.empty()) {
        throw Error("oracle_min_error_binary: empty candidate set");
    }
    const Matrix diff = m1.matrix() - m2.matrix();
    double best = 1.0;
    for (const Vector& phi : candidates.states) {
        if (phi.size() != m1.dim()) {
            throw DimensionError("oracle_min_error_binary: candidate dimension mismatch");
        }
        const double bias = (phi.adjoint() * diff * phi)(0, 0).real();
        best = std::min(best, 0.5 * (1.0 - std::abs(bias)));
    }
    return best;
}

}  // namespace qlabel
