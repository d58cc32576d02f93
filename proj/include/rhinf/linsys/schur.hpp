#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <optional>
#include <stdexcept>

namespace rhinf::detail {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

// Swaps the diagonal entries k and k+1 of an upper-triangular complex Schur
// factor T by a unitary similarity, accumulating the rotation into U.
inline void swap_schur_entries(MatrixXcd& T, MatrixXcd& U, Eigen::Index k) {
  using C = std::complex<double>;
  const C a = T(k, k), b = T(k, k + 1), d = T(k + 1, k + 1);
  // Eigenvector of the trailing eigenvalue within the 2x2 block: [b; d-a].
  const C x = b, y = d - a;
  const double nx = std::abs(x), ny = std::abs(y);
  if (ny == 0.0) return;  // already ordered (defective/equal case)
  const double r = std::hypot(nx, ny);
  const C c = x / r;      // Givens: G^H [x; y] = [r; 0]
  const C s = y / r;
  Eigen::Matrix2cd G;
  G << c, -std::conj(s), s, std::conj(c);
  T.middleRows(k, 2) = G.adjoint() * T.middleRows(k, 2);
  T.middleCols(k, 2) = T.middleCols(k, 2) * G;
  U.middleCols(k, 2) = U.middleCols(k, 2) * G;
  T(k + 1, k) = 0.0;
}

struct OrderedSchur {
  MatrixXcd T;  // upper triangular
  MatrixXcd U;  // unitary, M = U T U^H
  Eigen::Index n_selected = 0;
};

// Complex Schur form of M with eigenvalues satisfying `select` moved to the
// leading block (selection sort over diagonal entries with adjacent swaps).
template <typename Pred>
OrderedSchur ordered_schur(const MatrixXd& M, Pred select) {
  Eigen::ComplexSchur<MatrixXcd> schur(M.cast<std::complex<double>>(), true);
  if (schur.info() != Eigen::Success) throw std::runtime_error("ordered_schur: Schur iteration failed");
  OrderedSchur out{schur.matrixT(), schur.matrixU(), 0};
  const Eigen::Index n = M.rows();
  Eigen::Index front = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!select(out.T(i, i))) continue;
    for (Eigen::Index k = i; k > front; --k) swap_schur_entries(out.T, out.U, k - 1);
    ++front;
  }
  out.n_selected = front;
  return out;
}

// Solves A^T X + X A = W for symmetric W, A real with no mirror-symmetric
// eigenvalue pairs (Bartels-Stewart on the complex Schur form of A).
inline MatrixXd solve_lyapunov_transposed(const MatrixXd& A, const MatrixXd& W) {
  const Eigen::Index n = A.rows();
  Eigen::ComplexSchur<MatrixXcd> schur(A.cast<std::complex<double>>(), true);
  if (schur.info() != Eigen::Success) throw std::runtime_error("lyapunov: Schur iteration failed");
  const MatrixXcd& T = schur.matrixT();
  const MatrixXcd& U = schur.matrixU();
  MatrixXcd Wt = U.adjoint() * W.cast<std::complex<double>>() * U;
  MatrixXcd X = MatrixXcd::Zero(n, n);
  // T^H X + X T = Wt, column by column: (T^H + T(j,j) I) x_j = w_j - X T(:,j).
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXcd rhs = Wt.col(j);
    for (Eigen::Index k = 0; k < j; ++k) rhs -= X.col(k) * T(k, j);
    MatrixXcd L = T.adjoint() + T(j, j) * MatrixXcd::Identity(n, n);
    // L is lower triangular; forward substitution.
    Eigen::VectorXcd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::complex<double> acc = rhs(i);
      for (Eigen::Index k = 0; k < i; ++k) acc -= L(i, k) * x(k);
      if (std::abs(L(i, i)) < 1e-300) throw std::runtime_error("lyapunov: singular triangular factor");
      x(i) = acc / L(i, i);
    }
    X.col(j) = x;
  }
  MatrixXcd Xc = U * X * U.adjoint();
  MatrixXd Xr = Xc.real();
  return 0.5 * (Xr + Xr.transpose());
}

}  // namespace rhinf::detail
