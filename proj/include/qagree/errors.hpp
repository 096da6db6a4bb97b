#pragma once

#include <stdexcept>
#include <string>

namespace qagree {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands of incompatible dimension.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Construction-time invariant violation (invalid measurement, state, model...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Conditioning on a projector of (numerically) zero weight.
struct ZeroConditioningWeight : Error {
    explicit ZeroConditioningWeight(const std::string& msg) : Error(msg) {}
};

// Iterative eigensolver did not reach the off-diagonal threshold.
struct EigensolverFailure : Error {
    explicit EigensolverFailure(const std::string& msg) : Error(msg) {}
};

// Certainty recursion produced a non-projector level.
struct NonProjectorProduct : Error {
    explicit NonProjectorProduct(const std::string& msg) : Error(msg) {}
};

// Recording requested for measurements that do not commute with each other.
struct NonCommutingMeasurements : Error {
    explicit NonCommutingMeasurements(const std::string& msg) : Error(msg) {}
};

// Classical conditioning cell with nonpositive total weight in a signed model.
struct SignedConditioning : Error {
    explicit SignedConditioning(const std::string& msg) : Error(msg) {}
};

// Malformed scenario file.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace qagree
