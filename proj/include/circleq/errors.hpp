#pragma once

#include <stdexcept>

namespace circleq {

/// Coefficient mass sits at (or would be pushed past) the edge of the basis
/// truncation window, so the requested operation cannot be represented
/// faithfully at the current size.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A series evaluator cannot reach the requested tolerance in double
/// precision (the answer itself may be fine at a looser tolerance, or via a
/// logarithmic-domain routine).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace circleq
