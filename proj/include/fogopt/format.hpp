#pragma once

#include <cstdio>
#include <string>

namespace fogopt {

/// Machine outputs: 17 significant digits, enough for a lossless
/// double round-trip.
inline std::string fmt_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Human-readable summaries: 4 significant digits.
inline std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

}  // namespace fogopt
