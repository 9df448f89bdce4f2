#pragma once

#include <stdexcept>
#include <string>

namespace qlabel {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-square, non-Hermitian, or non-finite operator input.
struct InvalidOperator : Error {
    using Error::Error;
};

// Incompatible matrix/vector dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed permutation, or size mismatch with the observable.
struct PermutationError : Error {
    using Error::Error;
};

// Operation requires a fixed outcome count (e.g. binary input) and got another.
struct WrongArity : Error {
    using Error::Error;
};

// Measure-and-prepare tester blocks violate their normalization.
struct InvalidBlocks : Error {
    using Error::Error;
};

// Simulation model is inconsistent (outcome probabilities do not sum to one).
struct InvalidModel : Error {
    using Error::Error;
};

}  // namespace qlabel
