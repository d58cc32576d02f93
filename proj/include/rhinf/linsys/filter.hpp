#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

/// First-order biproper filter  W(s) = gain * (s + zero) / (s + pole).
struct FirstOrderFilter {
  double gain = 1.0;
  double zero = 0.0;  // rad/s
  double pole = 1.0;  // rad/s

  FirstOrderFilter() = default;
  FirstOrderFilter(double gain_, double zero_, double pole_)
      : gain(gain_), zero(zero_), pole(pole_) {
    if (pole <= 0.0) throw std::invalid_argument("FirstOrderFilter: pole must be positive");
    if (zero < 0.0) throw std::invalid_argument("FirstOrderFilter: zero must be nonnegative");
    if (gain <= 0.0) throw std::invalid_argument("FirstOrderFilter: gain must be positive");
  }

  std::complex<double> eval(double omega) const {
    const std::complex<double> s(0.0, omega);
    return gain * (s + zero) / (s + pole);
  }

  double magnitude(double omega) const { return std::abs(eval(omega)); }

  /// Diagonal state-space realization on `channels` identical channels.
  StateSpace to_state_space(Eigen::Index channels = 1) const {
    const Eigen::Index p = channels;
    MatrixXd A = -pole * MatrixXd::Identity(p, p);
    MatrixXd B = MatrixXd::Identity(p, p);
    MatrixXd C = gain * (zero - pole) * MatrixXd::Identity(p, p);
    MatrixXd D = gain * MatrixXd::Identity(p, p);
    return StateSpace(A, B, C, D);
  }
};

}  // namespace rhinf
