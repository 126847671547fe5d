#pragma once

#include <cstdio>
#include <string>

namespace pagelab {

// Canonical float formatting for every CSV cell; snprintf with the default C
// locale keeps output byte-stable across runs.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace pagelab
