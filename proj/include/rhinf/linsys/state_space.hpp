#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace rhinf {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using Eigen::VectorXcd;

/// Continuous-time LTI system  ẋ = Ax + Bu, y = Cx + Du.
/// Zero-state systems (n = 0) represent static gains.
struct StateSpace {
  MatrixXd A;  // n x n
  MatrixXd B;  // n x m
  MatrixXd C;  // p x n
  MatrixXd D;  // p x m

  StateSpace() = default;
  StateSpace(MatrixXd A_, MatrixXd B_, MatrixXd C_, MatrixXd D_)
      : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
    validate();
  }

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index inputs() const { return D.cols(); }
  Eigen::Index outputs() const { return D.rows(); }

  void validate() const {
    if (A.rows() != A.cols()) throw std::invalid_argument("StateSpace: A must be square");
    if (B.rows() != A.rows()) throw std::invalid_argument("StateSpace: rows(B) != n");
    if (C.cols() != A.rows()) throw std::invalid_argument("StateSpace: cols(C) != n");
    if (D.rows() != C.rows() || D.cols() != B.cols())
      throw std::invalid_argument("StateSpace: D must be p x m");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
      throw std::invalid_argument("StateSpace: non-finite entry");
  }

  static StateSpace gain(const MatrixXd& D) {
    return StateSpace(MatrixXd::Zero(0, 0), MatrixXd::Zero(0, D.cols()),
                      MatrixXd::Zero(D.rows(), 0), D);
  }

  static StateSpace identity(Eigen::Index p) { return gain(MatrixXd::Identity(p, p)); }
};

/// Realization of G2·G1 (u -> G1 -> G2 -> y), state dimension n1 + n2.
inline StateSpace series(const StateSpace& g1, const StateSpace& g2) {
  if (g2.inputs() != g1.outputs())
    throw std::invalid_argument("series: inputs(G2) != outputs(G1)");
  const Eigen::Index n1 = g1.states(), n2 = g2.states();
  MatrixXd A = MatrixXd::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = g1.A;
  A.bottomLeftCorner(n2, n1) = g2.B * g1.C;
  A.bottomRightCorner(n2, n2) = g2.A;
  MatrixXd B(n1 + n2, g1.inputs());
  B.topRows(n1) = g1.B;
  B.bottomRows(n2) = g2.B * g1.D;
  MatrixXd C(g2.outputs(), n1 + n2);
  C.leftCols(n1) = g2.D * g1.C;
  C.rightCols(n2) = g2.C;
  return StateSpace(A, B, C, g2.D * g1.D);
}

/// Transfer-function value C(jωI - A)^{-1}B + D.
inline MatrixXcd freq_response(const StateSpace& g, double omega) {
  const Eigen::Index n = g.states();
  if (n == 0) return g.D.cast<std::complex<double>>();
  MatrixXcd R = std::complex<double>(0.0, omega) * MatrixXcd::Identity(n, n) -
                g.A.cast<std::complex<double>>();
  Eigen::FullPivLU<MatrixXcd> lu(R);
  if (!lu.isInvertible())
    throw std::runtime_error("freq_response: jwI - A singular (pole on the imaginary axis at this frequency)");
  return g.C.cast<std::complex<double>>() * lu.solve(g.B.cast<std::complex<double>>()) +
         g.D.cast<std::complex<double>>();
}

inline nlohmann::json matrix_to_json(const MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline MatrixXd matrix_from_json(const nlohmann::json& j, Eigen::Index rows_hint = -1,
                                 Eigen::Index cols_hint = -1) {
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  if (r == 0) {
    return MatrixXd::Zero(rows_hint >= 0 ? rows_hint : 0, cols_hint >= 0 ? cols_hint : 0);
  }
  const Eigen::Index c = static_cast<Eigen::Index>(j.at(0).size());
  MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

inline nlohmann::json to_json(const StateSpace& g) {
  return {{"A", matrix_to_json(g.A)},
          {"B", matrix_to_json(g.B)},
          {"C", matrix_to_json(g.C)},
          {"D", matrix_to_json(g.D)}};
}

inline StateSpace state_space_from_json(const nlohmann::json& j) {
  MatrixXd D = matrix_from_json(j.at("D"));
  MatrixXd A = matrix_from_json(j.at("A"));
  const Eigen::Index n = A.rows();
  return StateSpace(A, matrix_from_json(j.at("B"), n, D.cols()),
                    matrix_from_json(j.at("C"), D.rows(), n), D);
}

}  // namespace rhinf
