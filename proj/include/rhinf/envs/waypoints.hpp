#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rhinf {

struct WaypointPlan {
  std::vector<Eigen::Vector3d> points;
  double trigger_radius = 5.0;  // meters, 3D distance, strict <
  size_t index = 0;
  bool wrap = false;    // lap-counting plans restart at the first waypoint
  size_t triggered = 0; // total waypoints hit (counts across laps)

  const Eigen::Vector3d& active() const {
    if (points.empty()) throw std::runtime_error("WaypointPlan: empty plan");
    return points[index];
  }
  size_t laps_completed() const { return points.empty() ? 0 : triggered / points.size(); }
};

/// Helical waypoint ring: n points on a circle, each step_deg CCW from the
/// previous with climb_per_point altitude gain.
inline WaypointPlan coil_trajectory(const Eigen::Vector3d& center, double radius = 50.0,
                                    int n = 15, double step_deg = 45.0,
                                    double climb_per_point = 3.0, double trigger_radius = 10.0) {
  WaypointPlan plan;
  plan.trigger_radius = trigger_radius;
  plan.wrap = true;
  const double step = step_deg * M_PI / 180.0;
  for (int k = 0; k < n; ++k) {
    const double a = step * (k + 1);
    plan.points.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a),
                             center.z() + climb_per_point * (k + 1));
  }
  return plan;
}

/// Advances the active waypoint when the 3D distance falls strictly below the
/// trigger radius; wrapping plans count laps.
inline bool waypoint_update(WaypointPlan& plan, const Eigen::Vector3d& position) {
  if (plan.points.empty()) return false;
  if ((plan.active() - position).norm() >= plan.trigger_radius) return false;
  ++plan.triggered;
  if (plan.index + 1 < plan.points.size()) {
    ++plan.index;
  } else if (plan.wrap) {
    plan.index = 0;
  }
  return true;
}

}  // namespace rhinf
