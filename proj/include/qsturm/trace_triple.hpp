#pragma once

#include <cmath>

namespace qsturm {

/// Half-traces (x, y, z) = (tr M(n-1), tr M(n), tr M(n)M(n-1)) / 2.
struct TraceTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double max_abs() const { return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z))); }
  bool operator==(const TraceTriple&) const = default;
};

}  // namespace qsturm
