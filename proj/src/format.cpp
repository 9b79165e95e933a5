#include "circleq/format.hpp"

#include <cstdio>

namespace circleq {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace circleq
