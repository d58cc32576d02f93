#pragma once

#include <limits>

#include "rhinf/hinf/augmented.hpp"
#include "rhinf/linsys/hinf_norm.hpp"
#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

struct MixedSensitivityReport {
  double norm_S = std::numeric_limits<double>::infinity();   // ||W_S S||_inf
  double norm_KS = std::numeric_limits<double>::infinity();  // ||W_KS KS||_inf
  double norm_T = std::numeric_limits<double>::infinity();   // ||W_T T||_inf
  double stacked_norm = std::numeric_limits<double>::infinity();
  bool stable = false;
};

namespace detail {

// Closed unity-feedback loop w -> (y, u, e) with u = K e, e = w - y, y = G u.
// Returns the stacked weighted system w -> [W_T y; W_KS u; W_S e].
inline StateSpace weighted_closed_loop(const StateSpace& G, const StateSpace& K,
                                       const StateSpace& Wt, const StateSpace& Wks,
                                       const StateSpace& Ws, MatrixXd* loop_A = nullptr) {
  const Eigen::Index p = G.outputs(), m = G.inputs();
  if (K.inputs() != p || K.outputs() != m)
    throw std::invalid_argument("weighted_closed_loop: K must be m x p");
  const Eigen::Index ng = G.states(), nk = K.states();

  // Algebraic loop: e = w - C_g x_g - D_g (C_k x_k + D_k e).
  MatrixXd M = MatrixXd::Identity(p, p) + G.D * K.D;
  Eigen::FullPivLU<MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw std::runtime_error("weighted_closed_loop: algebraic loop singular");
  MatrixXd Minv = lu.inverse();

  // e = Minv (w - C_g x_g - D_g C_k x_k)
  MatrixXd e_xg = -Minv * G.C;
  MatrixXd e_xk = -Minv * G.D * K.C;
  MatrixXd e_w = Minv;
  // u = C_k x_k + D_k e
  MatrixXd u_xg = K.D * e_xg;
  MatrixXd u_xk = K.C + K.D * e_xk;
  MatrixXd u_w = K.D * e_w;
  // y = C_g x_g + D_g u
  MatrixXd y_xg = G.C + G.D * u_xg;
  MatrixXd y_xk = G.D * u_xk;
  MatrixXd y_w = G.D * u_w;

  const Eigen::Index n = ng + nk;
  MatrixXd A(n, n), B(n, p);
  A.topLeftCorner(ng, ng) = G.A + G.B * u_xg;
  A.topRightCorner(ng, nk) = G.B * u_xk;
  A.bottomLeftCorner(nk, ng) = K.B * e_xg;
  A.bottomRightCorner(nk, nk) = K.A + K.B * e_xk;
  B.topRows(ng) = G.B * u_w;
  B.bottomRows(nk) = K.B * e_w;
  if (loop_A) *loop_A = A;

  // Append the three weight filter banks.
  const Eigen::Index nt = Wt.states(), nks = Wks.states(), ns = Ws.states();
  const Eigen::Index N = n + nt + nks + ns;
  MatrixXd Af = MatrixXd::Zero(N, N), Bf = MatrixXd::Zero(N, p);
  Af.topLeftCorner(n, n) = A;
  Bf.topRows(n) = B;
  Eigen::Index o = n;
  Af.block(o, o, nt, nt) = Wt.A;
  Af.block(o, 0, nt, ng) = Wt.B * y_xg;
  Af.block(o, ng, nt, nk) = Wt.B * y_xk;
  Bf.middleRows(o, nt) = Wt.B * y_w;
  o += nt;
  Af.block(o, o, nks, nks) = Wks.A;
  Af.block(o, 0, nks, ng) = Wks.B * u_xg;
  Af.block(o, ng, nks, nk) = Wks.B * u_xk;
  Bf.middleRows(o, nks) = Wks.B * u_w;
  o += nks;
  Af.block(o, o, ns, ns) = Ws.A;
  Af.block(o, 0, ns, ng) = Ws.B * e_xg;
  Af.block(o, ng, ns, nk) = Ws.B * e_xk;
  Bf.middleRows(o, ns) = Ws.B * e_w;

  const Eigen::Index pz = p + m + p;
  MatrixXd Cf = MatrixXd::Zero(pz, N), Df = MatrixXd::Zero(pz, p);
  Eigen::Index r = 0;
  o = n;
  Cf.block(r, 0, p, ng) = Wt.D * y_xg;
  Cf.block(r, ng, p, nk) = Wt.D * y_xk;
  Cf.block(r, o, p, nt) = Wt.C;
  Df.middleRows(r, p) = Wt.D * y_w;
  r += p;
  o += nt;
  Cf.block(r, 0, m, ng) = Wks.D * u_xg;
  Cf.block(r, ng, m, nk) = Wks.D * u_xk;
  Cf.block(r, o, m, nks) = Wks.C;
  Df.middleRows(r, m) = Wks.D * u_w;
  r += m;
  o += nks;
  Cf.block(r, 0, p, ng) = Ws.D * e_xg;
  Cf.block(r, ng, p, nk) = Ws.D * e_xk;
  Cf.block(r, o, p, ns) = Ws.C;
  Df.middleRows(r, p) = Ws.D * e_w;

  return StateSpace(Af, Bf, Cf, Df);
}

inline StateSpace output_slice(const StateSpace& g, Eigen::Index row0, Eigen::Index rows) {
  return StateSpace(g.A, g.B, g.C.middleRows(row0, rows), g.D.middleRows(row0, rows));
}

}  // namespace detail

/// Reports the weighted closed-loop norms and the internal stability flag.
/// Never throws: an unstable or degenerate loop reports stable=false and
/// infinite norms.
inline MixedSensitivityReport verify_mixed_sensitivity(const StateSpace& G, const StateSpace& K,
                                                       const StateSpace& Wt, const StateSpace& Wks,
                                                       const StateSpace& Ws, double tol = 1e-9) {
  MixedSensitivityReport rep;
  try {
    MatrixXd loop_A;
    StateSpace stacked = detail::weighted_closed_loop(G, K, Wt, Wks, Ws, &loop_A);
    rep.stable = loop_A.rows() == 0 || detail::is_hurwitz(loop_A);
    if (!rep.stable) return rep;
    const Eigen::Index p = G.outputs(), m = G.inputs();
    rep.norm_T = hinf_norm(detail::output_slice(stacked, 0, p), tol);
    rep.norm_KS = hinf_norm(detail::output_slice(stacked, p, m), tol);
    rep.norm_S = hinf_norm(detail::output_slice(stacked, p + m, p), tol);
    rep.stacked_norm = hinf_norm(stacked, tol);
  } catch (const std::exception&) {
    rep.stable = false;
  }
  return rep;
}

inline MixedSensitivityReport verify_mixed_sensitivity(const StateSpace& G, const StateSpace& K,
                                                       const MixedSensitivityWeights& w,
                                                       double tol = 1e-9) {
  return verify_mixed_sensitivity(G, K, w.W_T.to_state_space(G.outputs()),
                                  w.W_KS.to_state_space(G.inputs()),
                                  w.W_S.to_state_space(G.outputs()), tol);
}

}  // namespace rhinf
