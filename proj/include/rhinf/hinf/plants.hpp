#pragma once

#include "rhinf/hinf/weights.hpp"
#include "rhinf/linsys/pade.hpp"
#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

// Design models the controllers are synthesized against. States/outputs use
// each mode's own sign conventions; the controller bank wires the error
// signals accordingly.

/// Turtle kinematics with state x = [l, theta]: l' = -u_v, theta' = u_w.
inline StateSpace turtle_plant() {
  MatrixXd A = MatrixXd::Zero(2, 2);
  MatrixXd B(2, 2);
  B << -1.0, 0.0, 0.0, 1.0;
  MatrixXd C = MatrixXd::Identity(2, 2);
  MatrixXd D = MatrixXd::Zero(2, 2);
  return StateSpace(A, B, C, D);
}

inline constexpr double kYawDeadTime = 0.65;  // seconds

/// Heading dynamics theta' = -20 u_zeta behind the dead-time approximation.
inline StateSpace yaw_plant(bool with_delay = true) {
  MatrixXd A = MatrixXd::Zero(1, 1);
  MatrixXd B(1, 1), C(1, 1), D(1, 1);
  B << -20.0;
  C << 1.0;
  D << 0.0;
  StateSpace g(A, B, C, D);
  if (!with_delay) return g;
  return series(pade_delay(kYawDeadTime), g);
}

/// Ascend trim linearization, x = [-l, z], u = [u_eta, u_eps, u_delta].
inline StateSpace ascend_plant() {
  MatrixXd A = MatrixXd::Zero(2, 2);
  MatrixXd B(2, 3);
  B << 0.0, -5.0, 9.8,
      -0.4, -0.77, 0.0;
  MatrixXd C(2, 2);
  C << -1.0, 0.0, 0.0, 1.0;
  MatrixXd D = MatrixXd::Zero(2, 3);
  return StateSpace(A, B, C, D);
}

/// Descend trim linearization, same signal layout as ascend.
inline StateSpace descend_plant() {
  MatrixXd A = MatrixXd::Zero(2, 2);
  MatrixXd B(2, 3);
  B << 0.0, 5.0, -9.8,
      -0.4, 0.77, 0.0;
  MatrixXd C(2, 2);
  C << -1.0, 0.0, 0.0, 1.0;
  MatrixXd D = MatrixXd::Zero(2, 3);
  return StateSpace(A, B, C, D);
}

inline StateSpace design_plant(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::turtle: return turtle_plant();
    case ControllerMode::yaw: return yaw_plant();
    case ControllerMode::ascend: return ascend_plant();
    case ControllerMode::descend: return descend_plant();
  }
  throw std::invalid_argument("design_plant: bad mode");
}

/// Controller loop rates (Hz) used when packaging the runtime form.
inline double loop_rate_hz(ControllerMode mode) {
  return mode == ControllerMode::turtle ? 100.0 : 10.0;
}

}  // namespace rhinf
