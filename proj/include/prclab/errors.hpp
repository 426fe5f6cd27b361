#pragma once

#include <stdexcept>
#include <string>

namespace prclab {

/// A numeric argument is outside its documented domain.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operands have incompatible lengths, dimensions or supports.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input (hex strings, query-set files, keys).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scheme procedure issued more oracle queries than it declared.
struct QueryBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A crypto-oracle machine ran past its declared step bound.
struct StepBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exhaustive computation would exceed the configured enumeration cap.
struct EnumerationLimit : std::length_error {
    using std::length_error::length_error;
};

} // namespace prclab
