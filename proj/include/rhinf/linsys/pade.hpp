#pragma once

#include <stdexcept>

#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

/// All-pass rational dead-time approximation (2 - Ts)/(2 + Ts) of e^{-Ts}.
inline StateSpace pade_delay(double T) {
  if (T <= 0.0) throw std::invalid_argument("pade_delay: T must be positive");
  MatrixXd A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << -2.0 / T;
  B << 1.0;
  C << 4.0 / T;
  D << -1.0;
  return StateSpace(A, B, C, D);
}

}  // namespace rhinf
