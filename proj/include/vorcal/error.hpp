#pragma once

#include <stdexcept>
#include <string>

namespace vorcal {

// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression construction (bad variable index, zero denominator, ...).
struct ExprError : Error {
    using Error::Error;
};

// Evaluation failure (pole at the point, exp in an exact-only path).
struct EvalError : Error {
    using Error::Error;
};

// Zero testing could not reach a verdict (all sample points hit poles).
struct InconclusiveError : Error {
    using Error::Error;
};

// Chart mismatch or bad tensor indexing.
struct ChartError : Error {
    using Error::Error;
};

// Semantic violation of a structure invariant (non-Jacobi constants,
// degenerate coupling form, zero section not a leaf, ...).
struct DataError : Error {
    using Error::Error;
};

}  // namespace vorcal
