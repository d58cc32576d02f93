#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <optional>
#include <stdexcept>
#include <string>

#include "rhinf/linsys/schur.hpp"

namespace rhinf {

namespace detail {

// A 2n x 2n Hamiltonian [[H11, H12], [H21, -H11^T]] with H12, H21 symmetric.
// The stabilizing Riccati solution X satisfies
//   H21 + H22 X - X H11 - X H12 X = 0,  H11 + H12 X Hurwitz,
// and spans the stable invariant subspace [I; X].
struct HamiltonianRic {
  MatrixXd H11, H12, H21;

  MatrixXd assemble() const {
    const Eigen::Index n = H11.rows();
    MatrixXd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = H11;
    H.topRightCorner(n, n) = H12;
    H.bottomLeftCorner(n, n) = H21;
    H.bottomRightCorner(n, n) = -H11.transpose();
    return H;
  }

  MatrixXd residual(const MatrixXd& X) const {
    return H21 - H11.transpose() * X - X * H11 - X * H12 * X;
  }
};

// Stable-subspace solve with Newton refinement. Returns nullopt (with reason)
// when the Hamiltonian has eigenvalues too close to the imaginary axis, the
// stable subspace has the wrong dimension, or the basis is not graph-like.
inline std::optional<MatrixXd> solve_ric(const HamiltonianRic& ham, std::string* why = nullptr) {
  const Eigen::Index n = ham.H11.rows();
  const MatrixXd H = ham.assemble();
  const double scale = std::max(1.0, H.norm());

  auto fail = [&](const std::string& msg) -> std::optional<MatrixXd> {
    if (why) *why = msg;
    return std::nullopt;
  };

  auto schur = detail::ordered_schur(H, [&](std::complex<double> l) { return l.real() < 0.0; });
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (std::abs(schur.T(i, i).real()) < 1e-9 * scale)
      return fail("Hamiltonian eigenvalue on the imaginary axis");
  }
  if (schur.n_selected != n) return fail("stable invariant subspace has wrong dimension");

  MatrixXcd U1 = schur.U.topLeftCorner(n, n);
  MatrixXcd U2 = schur.U.bottomLeftCorner(n, n);
  Eigen::FullPivLU<MatrixXcd> lu(U1);
  if (!lu.isInvertible()) return fail("stable subspace is not a graph (U11 singular)");
  MatrixXd X = (U2 * lu.inverse()).real();
  X = 0.5 * (X + X.transpose());

  // Newton refinement: Mcl^T D + D Mcl = residual, X += D.
  for (int it = 0; it < 3; ++it) {
    MatrixXd res = ham.residual(X);
    const double rn = res.norm();
    if (rn < 1e-13 * scale * std::max(1.0, X.norm())) break;
    MatrixXd Mcl = ham.H11 + ham.H12 * X;
    try {
      MatrixXd D = detail::solve_lyapunov_transposed(Mcl, res);
      MatrixXd Xn = X + D;
      Xn = 0.5 * (Xn + Xn.transpose());
      if (ham.residual(Xn).norm() >= rn) break;
      X = Xn;
    } catch (const std::exception&) {
      break;
    }
  }
  return X;
}

inline bool is_hurwitz(const MatrixXd& A, double tol = 0.0) {
  if (A.rows() == 0) return true;
  Eigen::EigenSolver<MatrixXd> es(A, false);
  return (es.eigenvalues().real().array() < -tol).all();
}

// PBH test on eigenvalues with Re >= 0.
inline bool is_stabilizable(const MatrixXd& A, const MatrixXd& B) {
  const Eigen::Index n = A.rows();
  if (n == 0) return true;
  Eigen::EigenSolver<MatrixXd> es(A, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> l = es.eigenvalues()(i);
    if (l.real() < 0.0) continue;
    MatrixXcd M(n, n + B.cols());
    M.leftCols(n) = A.cast<std::complex<double>>() - l * MatrixXcd::Identity(n, n);
    M.rightCols(B.cols()) = B.cast<std::complex<double>>();
    Eigen::JacobiSVD<MatrixXcd> svd(M);
    if (svd.singularValues()(n - 1) < 1e-9 * std::max(1.0, svd.singularValues()(0))) return false;
  }
  return true;
}

inline bool is_detectable(const MatrixXd& A, const MatrixXd& C) {
  return is_stabilizable(A.transpose(), C.transpose());
}

}  // namespace detail

/// Stabilizing solution of A^T X + X A - X B R^{-1} B^T X + Q = 0.
/// Requires (A, B) stabilizable, R > 0, Q = Q^T >= 0.
inline MatrixXd solve_care(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
                           const MatrixXd& R) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != B.cols() || R.cols() != B.cols())
    throw std::invalid_argument("solve_care: dimension mismatch");
  if ((Q - Q.transpose()).norm() > 1e-10 * std::max(1.0, Q.norm()))
    throw std::invalid_argument("solve_care: Q must be symmetric");
  Eigen::LLT<MatrixXd> rllt(R);
  if (rllt.info() != Eigen::Success)
    throw std::invalid_argument("solve_care: R must be positive definite");
  if (!detail::is_stabilizable(A, B))
    throw std::invalid_argument("solve_care: (A, B) not stabilizable");

  detail::HamiltonianRic ham;
  ham.H11 = A;
  ham.H12 = -B * rllt.solve(B.transpose());
  ham.H21 = -Q;
  std::string why;
  auto X = detail::solve_ric(ham, &why);
  if (!X) throw std::runtime_error("solve_care: no stabilizing solution (" + why + ")");
  return *X;
}

}  // namespace rhinf
