#pragma once

#include <cstdio>
#include <string>

namespace birl {

/// Floats in emitted CSVs use 9 significant digits.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace birl
