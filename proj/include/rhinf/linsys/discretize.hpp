#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

struct DiscreteStateSpace {
  MatrixXd Ad, Bd, Cd, Dd;
  double dt = 0.0;

  Eigen::Index states() const { return Ad.rows(); }
  Eigen::Index inputs() const { return Dd.cols(); }
  Eigen::Index outputs() const { return Dd.rows(); }
};

enum class DiscretizeMethod { bilinear, zoh };

/// Bilinear (Tustin) transform; preserves DC gain and maps the open left
/// half-plane into the unit disk. Zoh matches the continuous response at
/// sample instants for piecewise-constant inputs.
inline DiscreteStateSpace discretize(const StateSpace& g, double dt, DiscretizeMethod method) {
  if (dt <= 0.0) throw std::invalid_argument("discretize: dt must be positive");
  g.validate();
  const Eigen::Index n = g.states();
  DiscreteStateSpace d;
  d.dt = dt;
  if (n == 0) {
    d.Ad = MatrixXd::Zero(0, 0);
    d.Bd = MatrixXd::Zero(0, g.inputs());
    d.Cd = MatrixXd::Zero(g.outputs(), 0);
    d.Dd = g.D;
    return d;
  }
  if (method == DiscretizeMethod::bilinear) {
    const double a = 0.5 * dt;
    MatrixXd M = MatrixXd::Identity(n, n) - a * g.A;
    Eigen::FullPivLU<MatrixXd> lu(M);
    if (!lu.isInvertible())
      throw std::runtime_error("discretize: bilinear transform singular (pole at s = 2/dt)");
    const double s = std::sqrt(dt);
    MatrixXd Minv = lu.inverse();
    d.Ad = Minv * (MatrixXd::Identity(n, n) + a * g.A);
    d.Bd = s * Minv * g.B;
    d.Cd = s * g.C * Minv;
    d.Dd = g.D + a * g.C * Minv * g.B;
    return d;
  }
  // zoh via block matrix exponential [[A, B], [0, 0]].
  const Eigen::Index m = g.inputs();
  MatrixXd blk = MatrixXd::Zero(n + m, n + m);
  blk.topLeftCorner(n, n) = g.A;
  blk.topRightCorner(n, m) = g.B;
  MatrixXd e = (blk * dt).exp();
  d.Ad = e.topLeftCorner(n, n);
  d.Bd = e.topRightCorner(n, m);
  d.Cd = g.C;
  d.Dd = g.D;
  return d;
}

inline nlohmann::json to_json(const DiscreteStateSpace& d) {
  return {{"Ad", matrix_to_json(d.Ad)}, {"Bd", matrix_to_json(d.Bd)},
          {"Cd", matrix_to_json(d.Cd)}, {"Dd", matrix_to_json(d.Dd)}, {"dt", d.dt}};
}

inline DiscreteStateSpace discrete_from_json(const nlohmann::json& j) {
  DiscreteStateSpace d;
  d.Dd = matrix_from_json(j.at("Dd"));
  d.Ad = matrix_from_json(j.at("Ad"));
  const Eigen::Index n = d.Ad.rows();
  d.Bd = matrix_from_json(j.at("Bd"), n, d.Dd.cols());
  d.Cd = matrix_from_json(j.at("Cd"), d.Dd.rows(), n);
  d.dt = j.at("dt").get<double>();
  return d;
}

/// Stateful runtime form of a discrete controller: u_k = Cd x_k + Dd e_k.
class DiscreteRunner {
 public:
  DiscreteRunner() = default;
  explicit DiscreteRunner(DiscreteStateSpace sys)
      : sys_(std::move(sys)), x_(VectorXd::Zero(sys_.states())) {}

  VectorXd step(const VectorXd& e) {
    VectorXd u = sys_.Cd * x_ + sys_.Dd * e;
    x_ = sys_.Ad * x_ + sys_.Bd * e;
    return u;
  }

  void reset() { x_.setZero(); }
  const DiscreteStateSpace& system() const { return sys_; }

 private:
  DiscreteStateSpace sys_;
  VectorXd x_;
};

}  // namespace rhinf
