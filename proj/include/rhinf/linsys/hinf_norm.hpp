#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rhinf/linsys/riccati.hpp"
#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

namespace detail {

inline double max_singular_value(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

inline double max_singular_value(const MatrixXd& m) {
  return max_singular_value(MatrixXcd(m.cast<std::complex<double>>()));
}

// Bounded-real-lemma Hamiltonian for level gamma > sigma_max(D):
// G stable has ||G||_inf < gamma iff M(gamma) has no imaginary-axis eigenvalue.
inline MatrixXd brl_hamiltonian(const StateSpace& g, double gamma) {
  const Eigen::Index n = g.states(), m = g.inputs(), p = g.outputs();
  MatrixXd R = gamma * gamma * MatrixXd::Identity(m, m) - g.D.transpose() * g.D;
  Eigen::PartialPivLU<MatrixXd> lu(R);
  MatrixXd RiDt = lu.solve(g.D.transpose());  // R^{-1} D^T
  MatrixXd Abar = g.A + g.B * RiDt * g.C;
  MatrixXd M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = Abar;
  M.topRightCorner(n, n) = g.B * lu.solve(g.B.transpose());
  M.bottomLeftCorner(n, n) =
      -g.C.transpose() * (MatrixXd::Identity(p, p) + g.D * RiDt.transpose()) * g.C;
  M.bottomRightCorner(n, n) = -Abar.transpose();
  return M;
}

inline bool has_imaginary_axis_eigenvalue(const MatrixXd& M, double rel_tol = 1e-8) {
  Eigen::EigenSolver<MatrixXd> es(M, false);
  const double scale = std::max(1.0, M.norm());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i).real()) <= rel_tol * scale) return true;
  }
  return false;
}

}  // namespace detail

/// H-infinity norm of a stable system by bisection on the bounded-real-lemma
/// Hamiltonian (imaginary-axis eigenvalue test), to relative tolerance `tol`.
inline double hinf_norm(const StateSpace& g, double tol = 1e-6) {
  g.validate();
  const Eigen::Index n = g.states();
  if (n == 0) return detail::max_singular_value(g.D);
  Eigen::EigenSolver<MatrixXd> es(g.A, false);
  double max_re = -std::numeric_limits<double>::infinity();
  std::vector<double> probe{0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto l = es.eigenvalues()(i);
    max_re = std::max(max_re, l.real());
    if (std::abs(l) > 0.0) probe.push_back(std::abs(l));
    if (std::abs(l.imag()) > 0.0) probe.push_back(std::abs(l.imag()));
  }
  if (max_re >= 0.0) throw std::invalid_argument("hinf_norm: A is not Hurwitz");

  double lo = detail::max_singular_value(g.D);
  for (double w : probe)
    lo = std::max(lo, detail::max_singular_value(freq_response(g, w)));
  if (lo == 0.0) {
    // Zero transfer function (e.g. C or B vanishes).
    if (g.B.norm() == 0.0 || g.C.norm() == 0.0) return 0.0;
    lo = 1e-12;
  }

  double hi = 2.0 * lo;
  int guard = 0;
  while (detail::has_imaginary_axis_eigenvalue(detail::brl_hamiltonian(g, hi))) {
    hi *= 2.0;
    if (++guard > 60) throw std::runtime_error("hinf_norm: no finite upper bound found");
  }
  // lo is a certified lower bound from frequency samples; (1+tol) cushions it.
  double lo_b = lo;
  guard = 0;
  while (hi - lo_b > tol * std::max(1.0, lo_b)) {
    const double mid = 0.5 * (lo_b + hi);
    if (detail::has_imaginary_axis_eigenvalue(detail::brl_hamiltonian(g, mid)))
      lo_b = mid;
    else
      hi = mid;
    if (++guard > 200)
      throw std::runtime_error("hinf_norm: bisection failed to converge in bracket [" +
                               std::to_string(lo_b) + ", " + std::to_string(hi) + "]");
  }
  return hi;
}

}  // namespace rhinf
