#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qlabel::rng {

// Counter-based generator: every variate is a pure function of
// (seed, stream, counter), so trials can be evaluated in any order and the
// aggregate never depends on scheduling. Mixing is splitmix64 (Steele et al.,
// "Fast splittable pseudorandom number generators"), normals come from
// Box-Muller; both are fully specified here, so results are identical across
// platforms and standard libraries.
inline constexpr const char* kAlgorithm = "splitmix64-boxmuller/1";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_value(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

// Uniform double in [0, 1) from 53 high bits.
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe as a logarithm argument.
inline double u01_open(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

struct GaussianPair {
    double first;
    double second;
};

inline GaussianPair gaussian_pair(std::uint64_t bits1, std::uint64_t bits2) {
    const double u1 = u01_open(bits1);
    const double u2 = u01(bits2);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Uniform integer in [0, n).
inline int uniform_index(std::uint64_t bits, int n) {
    const int idx = static_cast<int>(u01(bits) * n);
    return idx >= n ? n - 1 : idx;
}

// Fisher-Yates shuffle of (0, ..., n-1) driven by counters 0..n-2 of the
// given stream; uniform over all n! orderings.
inline std::vector<int> random_permutation(int n, std::uint64_t seed, std::uint64_t stream) {
    std::vector<int> arr(n);
    for (int i = 0; i < n; ++i) arr[i] = i;
    std::uint64_t counter = 0;
    for (int i = n - 1; i >= 1; --i) {
        const int j = uniform_index(counter_value(seed, stream, counter++), i + 1);
        std::swap(arr[i], arr[j]);
    }
    return arr;
}

}  // namespace qlabel::rng
