#pragma once

#include <cstdint>
#include <vector>

#include "qlabel/linalg.hpp"

namespace qlabel {

enum class ProbeProvenance { grid, random_seeded, eigenvector_augmented };

const char* to_string(ProbeProvenance p);

struct ProbeCandidateSet {
    std::vector<Vector> states;
    ProbeProvenance provenance = ProbeProvenance::random_seeded;
};

// Deterministic unit vectors, uniform under the rotation-invariant measure:
// independent standard complex Gaussian entries, normalized. A fixed
// (dim, count, seed) triple always produces the same set.
ProbeCandidateSet sample_probes(int dim, int count, std::uint64_t seed);

// Appends every eigenvector of M1 - M2. The brute-force search over such a
// set attains the analytic binary optimum exactly, because the optimal probe
// is an eigenvector of the difference.
ProbeCandidateSet augment_with_difference_eigenvectors(ProbeCandidateSet base,
                                                       const HermitianOperator& m1,
                                                       const HermitianOperator& m2);

// Brute-force oracle for the binary labeling error: for each candidate probe
// the best classical post-processing errs with probability
// (1 - |<phi|(M1 - M2)|phi>|) / 2; returns the minimum over candidates. The
// evaluation path never touches the spectral-norm formula it checks.
double oracle_min_error_binary(const HermitianOperator& m1, const HermitianOperator& m2,
                               const ProbeCandidateSet& candidates);

}  // namespace qlabel
