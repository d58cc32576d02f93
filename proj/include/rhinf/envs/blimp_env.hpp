#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "rhinf/envs/config.hpp"
#include "rhinf/envs/rewards.hpp"
#include "rhinf/envs/scaling.hpp"
#include "rhinf/envs/waypoints.hpp"
#include "rhinf/hinf/bank.hpp"
#include "rhinf/hinf/plants.hpp"

namespace rhinf {

/// Commanded body rates of the thrust-vectoring surrogate before clamps.
/// The map is branch-blended on the tilt sign so that its Jacobians at the
/// two trim points (eps, delta) = (-0.75, 0.5) and (0.75, -0.5) reproduce the
/// ascend/descend design models exactly (each in that model's own
/// relative-altitude sign convention).
struct BlimpRates {
  double forward = 0.0;  // m/s, body x
  double climb = 0.0;    // m/s, world z
};

inline BlimpRates blimp_rate_map(double eta, double eps, double delta) {
  BlimpRates r;
  r.forward = 5.0 * std::abs(eps) - 9.8 * delta * std::sin(2.0 * M_PI * eps / 3.0);
  const double s = eps > 0.0 ? -1.0 : 1.0;
  r.climb = -s * 0.4 * eta - 0.77 * eps;
  return r;
}

/// Desk-scale thrust-vectoring blimp surrogate. Actuators respond with a
/// first-order lag; the rudder channel additionally passes through the yaw
/// dead-time approximation. Wind advects position, buoyancy offsets the climb
/// rate, and commanded body rates are clamped to the maximum speed.
class BlimpEnv {
 public:
  BlimpEnv(const BlimpEnvConfig& cfg, std::mt19937_64 rng) : cfg_(cfg), rng_(std::move(rng)) {
    reset();
  }

  void reset() {
    pos_.setZero();
    heading_ = 0.0;
    act_.setZero();
    pade_state_ = 0.0;
    steps_ = 0;
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double wind_dir = angle(rng_);
    wind_ = cfg_.wind_speed * Eigen::Vector2d(std::cos(wind_dir), std::sin(wind_dir));
    buoyancy_ = cfg_.buoyancy_lo + (cfg_.buoyancy_hi - cfg_.buoyancy_lo) * unit(rng_);
    // Single random waypoint; evaluation scenarios install their own plan.
    const double bearing = angle(rng_);
    const double dist = cfg_.spawn_radius * (0.25 + 0.75 * unit(rng_));
    const double dz = cfg_.spawn_alt * (2.0 * unit(rng_) - 1.0);
    plan_ = WaypointPlan{};
    plan_.points = {Eigen::Vector3d(pos_.x() + dist * std::cos(bearing),
                                    pos_.y() + dist * std::sin(bearing), pos_.z() + dz)};
    plan_.trigger_radius = cfg_.trigger_radius;
    heading_ = angle(rng_);
  }

  void install_plan(WaypointPlan plan) {
    plan_ = std::move(plan);
    steps_ = 0;
  }
  void set_wind(const Eigen::Vector2d& w) { wind_ = w; }
  void set_buoyancy(double b) { buoyancy_ = b; }
  const WaypointPlan& plan() const { return plan_; }

  double planar_l() const {
    const auto d = plan_.active() - pos_;
    return std::hypot(d.x(), d.y());
  }
  double rel_z() const { return plan_.active().z() - pos_.z(); }
  double total_l() const { return (plan_.active() - pos_).norm(); }
  double theta_rel() const {
    const auto d = plan_.active() - pos_;
    return wrap_angle(std::atan2(d.y(), d.x()) - heading_);
  }
  const Eigen::Vector3d& position() const { return pos_; }
  double heading() const { return heading_; }
  const Eigen::Vector4d& actuators() const { return act_; }
  Eigen::Vector2d wind() const { return wind_; }
  double buoyancy() const { return buoyancy_; }
  int steps() const { return steps_; }
  double dt() const { return cfg_.dt; }
  int episode_len() const { return cfg_.episode_len; }

  BlimpBaseInputs base_inputs() const {
    return BlimpBaseInputs{theta_rel(), planar_l(), rel_z()};
  }

  /// Scaled observation (s_z, s_l, s_theta, u_zeta, u_eta, u_eps, u_delta, q).
  Eigen::VectorXd observe(const Eigen::Vector4d& u, double q, bool with_noise = true) {
    Eigen::VectorXd o(8);
    o(0) = scale_signed(rel_z(), cfg_.distance_scale);
    o(1) = scale_distance(planar_l(), cfg_.distance_scale);
    o(2) = scale_angle(theta_rel());
    if (with_noise && cfg_.noise_std > 0.0) {
      std::normal_distribution<double> n(0.0, cfg_.noise_std);
      for (int i = 0; i < 3; ++i) o(i) = clamp01(o(i) + n(rng_));
    }
    o.segment<4>(3) = u;
    o(7) = q;
    return o;
  }

  StepResult step(const Eigen::Vector4d& cmd) {
    // Actuator lag, then the rudder dead time.
    const double k = cfg_.dt / cfg_.actuator_tau;
    for (int i = 0; i < 4; ++i) {
      const double c = std::clamp(cmd(i), -1.0, 1.0);
      act_(i) = std::clamp(act_(i) + k * (c - act_(i)), -1.0, 1.0);
    }
    const double T = kYawDeadTime;
    const double zeta_eff = (4.0 / T) * pade_state_ - act_(0);
    pade_state_ += cfg_.dt * (-(2.0 / T) * pade_state_ + act_(0));

    const double yaw_rate = std::clamp(-20.0 * zeta_eff, -cfg_.yaw_rate_max, cfg_.yaw_rate_max);
    heading_ = wrap_angle(heading_ + yaw_rate * cfg_.dt);

    BlimpRates rates = blimp_rate_map(act_(1), act_(2), act_(3));
    const double v_f = std::clamp(rates.forward, -cfg_.speed_max, cfg_.speed_max);
    double climb = std::clamp(rates.climb, -cfg_.speed_max, cfg_.speed_max);
    climb += (buoyancy_ - 1.0) * cfg_.buoyancy_gain;

    pos_.x() += (v_f * std::cos(heading_) + wind_.x()) * cfg_.dt;
    pos_.y() += (v_f * std::sin(heading_) + wind_.y()) * cfg_.dt;
    pos_.z() += climb * cfg_.dt;
    ++steps_;

    StepResult r;
    r.success = waypoint_update(plan_, pos_);
    r.done = r.success || steps_ >= cfg_.episode_len;
    return r;
  }

  double reward_for(const Eigen::Vector4d& a, const Eigen::Vector4d& u) const {
    return blimp_reward(rel_z(), planar_l(), theta_rel(), a, u);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  BlimpEnvConfig cfg_;
  std::mt19937_64 rng_;
  Eigen::Vector3d pos_ = Eigen::Vector3d::Zero();
  double heading_ = 0.0;
  Eigen::Vector4d act_ = Eigen::Vector4d::Zero();  // (zeta, eta, eps, delta)
  double pade_state_ = 0.0;
  Eigen::Vector2d wind_ = Eigen::Vector2d::Zero();
  double buoyancy_ = 1.0;
  WaypointPlan plan_;
  int steps_ = 0;
};

}  // namespace rhinf
