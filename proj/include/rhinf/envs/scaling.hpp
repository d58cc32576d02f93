#pragma once

#include <algorithm>
#include <cmath>

namespace rhinf {

inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

// Observation squash maps onto [0, 1].
inline double scale_distance(double l, double scale) { return 1.0 / (1.0 + std::abs(l) / scale); }
inline double scale_angle(double theta) { return (theta / M_PI + 1.0) * 0.5; }
// Signed distances (relative altitude) keep their sign: 0.5 at zero.
inline double scale_signed(double z, double scale) {
  return 0.5 * (z / (scale + std::abs(z)) + 1.0);
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace rhinf
