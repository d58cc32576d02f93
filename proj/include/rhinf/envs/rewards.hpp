#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace rhinf {

// Turtle reward weights: w_success [|l| <= eps] + w_track (-|l|).
inline constexpr double kTurtleSuccessWeight = 500.0;
inline constexpr double kTurtleTrackWeight = 0.1;
inline constexpr double kTurtleSuccessEps = 0.1;  // meters

inline bool turtle_success(double l) { return std::abs(l) <= kTurtleSuccessEps; }

inline double turtle_reward(double l) {
  return kTurtleSuccessWeight * (turtle_success(l) ? 1.0 : 0.0) +
         kTurtleTrackWeight * (-std::abs(l));
}

// Blimp reward weights (w_success, w_track, w_penalty) = (500, 1, 10),
// tracking (w_z, w_l, w_theta) = (2, 5, 2), success on the total 3D distance.
inline constexpr double kBlimpSuccessWeight = 500.0;
inline constexpr double kBlimpTrackWeight = 1.0;
inline constexpr double kBlimpPenaltyWeight = 10.0;
inline constexpr double kBlimpSuccessEps = 5.0;  // meters, total distance

inline bool blimp_success(double z, double l) { return std::hypot(l, z) <= kBlimpSuccessEps; }

inline double blimp_tracking_reward(double z, double l, double theta) {
  return -2.0 * std::abs(z) - 5.0 * std::abs(l) - 2.0 * std::abs(theta);
}

/// Action-deviation shaping Delta(a, u). Conditions accumulate; the thrust
/// channels use the convention eps > 0 = backward tilt, delta < 0 = reverse.
inline double action_penalty(const Eigen::Vector4d& a, const Eigen::Vector4d& u) {
  double d = 0.0;
  if (a(0) * u(0) < 0.0 && std::abs(a(0) - u(0)) > 0.4) d += -0.5;
  if (a(1) * u(1) < 0.0 && std::abs(a(1) - u(1)) > 0.4) d += -0.5;
  if (a(2) * a(3) > 0.0) d += -0.5;
  if (a(2) * u(2) > 0.0) d += 1.0;
  if (u(1) == -1.0 && u(2) == 0.5 && a(2) > 0.7) d += -0.5;
  return d;
}

inline double blimp_reward(double z, double l, double theta, const Eigen::Vector4d& a,
                           const Eigen::Vector4d& u) {
  return kBlimpSuccessWeight * (blimp_success(z, l) ? 1.0 : 0.0) +
         kBlimpTrackWeight * blimp_tracking_reward(z, l, theta) +
         kBlimpPenaltyWeight * action_penalty(a, u);
}

}  // namespace rhinf
