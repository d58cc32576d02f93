#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <random>

namespace rhinf {

/// Clipped Gaussian random walk: delta' = clip(delta + n, -clamp, +clamp),
/// n ~ N(0, 1) per channel. Training uses clamp 1, testing clamp 5.
inline Eigen::VectorXd wind_walk(const Eigen::VectorXd& delta_prev, double clamp,
                                 std::mt19937_64& rng) {
  if (clamp <= 0.0) throw std::invalid_argument("wind_walk: clamp must be positive");
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::VectorXd d = delta_prev;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d(i) = std::clamp(d(i) + n01(rng), -clamp, clamp);
  return d;
}

}  // namespace rhinf
