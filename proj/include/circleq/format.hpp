#pragma once

#include <string>

namespace circleq {

/// Formats a double with 17 significant digits, enough to round-trip any IEEE
/// binary64 value exactly. Infinities render as "inf"/"-inf". Used by every
/// CSV writer so that identical runs produce byte-identical files.
std::string g17(double x);

}  // namespace circleq
