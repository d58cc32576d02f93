#pragma once

#include <algorithm>
#include <cmath>

#include "rhinf/hinf/synthesis.hpp"
#include "rhinf/linsys/discretize.hpp"

namespace rhinf {

inline double clamp_channel(double v, const ClampRange& r) { return std::clamp(v, r.lo, r.hi); }

/// Turtle base controller: u = K_runtime(e) with e = (-l, -theta_rel).
class TurtleBaseController {
 public:
  TurtleBaseController() = default;
  explicit TurtleBaseController(const HinfController& c) : ctrl_(c), runner_(c.runtime) {}

  // Returns (u_v, u_w) clamped to [-1, 1].
  Eigen::Vector2d evaluate(double l, double theta_rel) {
    VectorXd e(2);
    e << -l, -theta_rel;
    VectorXd u = runner_.step(e);
    return {clamp_channel(u(0), ctrl_.clamps[0]), clamp_channel(u(1), ctrl_.clamps[1])};
  }

  void reset() { runner_.reset(); }

 private:
  HinfController ctrl_;
  DiscreteRunner runner_;
};

enum class AltitudeMode { ascend, descend };

/// What the blimp base controllers observe each tick. rel_z = z_target - z_robot.
struct BlimpBaseInputs {
  double rel_yaw = 0.0;   // bearing-to-target minus heading, wrapped
  double planar_l = 0.0;  // horizontal distance to target, meters
  double rel_z = 0.0;     // relative altitude, meters
};

/// Bank of the three synthesized controllers. The altitude pair switches on
/// the sign of the relative altitude (ties keep the previous mode) and the
/// switched-out controller state is zeroed; yaw runs independently.
class BlimpControllerBank {
 public:
  BlimpControllerBank() = default;
  BlimpControllerBank(const HinfController& yaw, const HinfController& ascend,
                      const HinfController& descend)
      : yaw_(yaw), ascend_(ascend), descend_(descend),
        yaw_run_(yaw.runtime), ascend_run_(ascend.runtime), descend_run_(descend.runtime) {}

  AltitudeMode mode() const { return mode_; }

  // Returns (u_zeta, u_eta, u_eps, u_delta), clamped per mode.
  Eigen::Vector4d evaluate(const BlimpBaseInputs& in) {
    const AltitudeMode want =
        in.rel_z > 0.0 ? AltitudeMode::ascend : (in.rel_z < 0.0 ? AltitudeMode::descend : mode_);
    if (want != mode_) {
      mode_ = want;
      ascend_run_.reset();
      descend_run_.reset();
    }

    VectorXd ey(1);
    ey << in.rel_yaw;  // e = theta_ref - theta
    const double u_zeta = clamp_channel(yaw_run_.step(ey)(0), yaw_.clamps[0]);

    // Each trim model is written in its own relative-altitude sign convention:
    // ascend uses z = z_robot - z_target, descend the mirror image, so the
    // error fed to the active controller is e = (-l, -z_mode).
    VectorXd e(2);
    const HinfController& active = mode_ == AltitudeMode::ascend ? ascend_ : descend_;
    DiscreteRunner& runner = mode_ == AltitudeMode::ascend ? ascend_run_ : descend_run_;
    const double z_mode = mode_ == AltitudeMode::ascend ? -in.rel_z : in.rel_z;
    e << -in.planar_l, -z_mode;
    VectorXd u = runner.step(e);
    Eigen::Vector4d out;
    out(0) = u_zeta;
    for (int i = 0; i < 3; ++i) out(i + 1) = clamp_channel(u(i), active.clamps[i]);
    return out;
  }

  void reset() {
    yaw_run_.reset();
    ascend_run_.reset();
    descend_run_.reset();
    mode_ = AltitudeMode::ascend;
  }

 private:
  HinfController yaw_, ascend_, descend_;
  DiscreteRunner yaw_run_, ascend_run_, descend_run_;
  AltitudeMode mode_ = AltitudeMode::ascend;
};

}  // namespace rhinf
