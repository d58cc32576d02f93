#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "rhinf/envs/config.hpp"
#include "rhinf/envs/rewards.hpp"
#include "rhinf/envs/scaling.hpp"
#include "rhinf/envs/wind.hpp"

namespace rhinf {

struct StepResult {
  double reward = 0.0;
  bool done = false;
  bool success = false;
};

/// Planar unicycle navigation toward a random stationary target, with the
/// clipped random-walk wind offset added to the applied action.
class TurtleEnv {
 public:
  explicit TurtleEnv(const TurtleEnvConfig& cfg, std::mt19937_64 rng)
      : cfg_(cfg), rng_(std::move(rng)) {
    reset();
  }

  void reset() {
    std::uniform_real_distribution<double> pos(cfg_.spawn_margin, cfg_.arena - cfg_.spawn_margin);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    x_ = pos(rng_);
    y_ = pos(rng_);
    heading_ = ang(rng_);
    tx_ = pos(rng_);
    ty_ = pos(rng_);
    wind_.setZero();
    steps_ = 0;
  }

  double l() const { return std::hypot(tx_ - x_, ty_ - y_); }
  double theta_rel() const { return wrap_angle(heading_ - std::atan2(ty_ - y_, tx_ - x_)); }
  int steps() const { return steps_; }
  Eigen::Vector2d wind() const { return wind_; }
  double dt() const { return cfg_.dt; }
  int episode_len() const { return cfg_.episode_len; }

  /// Scaled observation (s_theta, s_l, u_v, u_w, q) for the current state.
  Eigen::VectorXd observe(double u_v, double u_w, double q, bool with_noise = true) {
    Eigen::VectorXd o(5);
    o(0) = scale_angle(theta_rel());
    o(1) = scale_distance(l(), cfg_.distance_scale);
    if (with_noise && cfg_.noise_std > 0.0) {
      std::normal_distribution<double> n(0.0, cfg_.noise_std);
      o(0) = clamp01(o(0) + n(rng_));
      o(1) = clamp01(o(1) + n(rng_));
    }
    o(2) = u_v;
    o(3) = u_w;
    o(4) = q;
    return o;
  }

  StepResult step(double v_cmd, double w_cmd) {
    double v = v_cmd, w = w_cmd;
    if (cfg_.wind_clamp > 0.0) {
      wind_ = wind_walk(wind_, cfg_.wind_clamp, rng_);
      v += wind_(0);
      w += wind_(1);
    }
    x_ += v * std::cos(heading_) * cfg_.dt;
    y_ += v * std::sin(heading_) * cfg_.dt;
    heading_ = wrap_angle(heading_ + w * cfg_.dt);
    x_ = std::clamp(x_, 0.0, cfg_.arena);
    y_ = std::clamp(y_, 0.0, cfg_.arena);
    ++steps_;

    StepResult r;
    r.reward = turtle_reward(l());
    r.success = turtle_success(l());
    r.done = r.success || steps_ >= cfg_.episode_len;
    return r;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  TurtleEnvConfig cfg_;
  std::mt19937_64 rng_;
  double x_ = 0, y_ = 0, heading_ = 0, tx_ = 0, ty_ = 0;
  Eigen::Vector2d wind_ = Eigen::Vector2d::Zero();
  int steps_ = 0;
};

}  // namespace rhinf
