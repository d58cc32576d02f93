#pragma once

#include <stdexcept>

#include "rhinf/hinf/weights.hpp"
#include "rhinf/linsys/state_space.hpp"

namespace rhinf {

/// Generalized plant P mapping (w, u) -> (z_t, z_ks, z_s, e) for the
/// mixed-sensitivity stack of Eq-style closed-loop maps
///   z_t = W_T y,  z_ks = W_KS u,  z_s = W_S e,  e = w - y,
/// so that the closed loop w -> z equals [W_T T; W_KS KS; W_S S].
struct AugmentedPlant {
  StateSpace P;         // inputs [w (p), u (m)], outputs [z_t (p), z_ks (m), z_s (p), e (p)]
  Eigen::Index nw = 0;  // exogenous input count (= p)
  Eigen::Index nu = 0;  // control input count (= m)
  Eigen::Index nzt = 0, nzks = 0, nzs = 0, ne = 0;

  Eigen::Index nz() const { return nzt + nzks + nzs; }
};

inline AugmentedPlant build_augmented_plant(const StateSpace& G, const StateSpace& Wt,
                                            const StateSpace& Wks, const StateSpace& Ws) {
  G.validate();
  const Eigen::Index p = G.outputs(), m = G.inputs();
  if (Wt.inputs() != p || Wt.outputs() != p)
    throw std::invalid_argument("build_augmented_plant: W_T must be p x p");
  if (Wks.inputs() != m || Wks.outputs() != m)
    throw std::invalid_argument("build_augmented_plant: W_KS must be m x m");
  if (Ws.inputs() != p || Ws.outputs() != p)
    throw std::invalid_argument("build_augmented_plant: W_S must be p x p");

  const Eigen::Index ng = G.states(), nt = Wt.states(), nks = Wks.states(), ns = Ws.states();
  const Eigen::Index n = ng + nt + nks + ns;
  const Eigen::Index iw = 0, iu = p;            // input offsets
  const Eigen::Index og = 0, ot = ng, oks = ng + nt, os = ng + nt + nks;  // state offsets

  MatrixXd A = MatrixXd::Zero(n, n);
  MatrixXd B = MatrixXd::Zero(n, p + m);
  MatrixXd C = MatrixXd::Zero(p + m + p + p, n);
  MatrixXd D = MatrixXd::Zero(p + m + p + p, p + m);

  // Plant: x_g' = A_g x_g + B_g u;  y = C_g x_g + D_g u.
  A.block(og, og, ng, ng) = G.A;
  B.block(og, iu, ng, m) = G.B;

  // W_T driven by y.
  A.block(ot, ot, nt, nt) = Wt.A;
  A.block(ot, og, nt, ng) = Wt.B * G.C;
  B.block(ot, iu, nt, m) = Wt.B * G.D;

  // W_KS driven by u.
  A.block(oks, oks, nks, nks) = Wks.A;
  B.block(oks, iu, nks, m) = Wks.B;

  // W_S driven by e = w - y.
  A.block(os, os, ns, ns) = Ws.A;
  A.block(os, og, ns, ng) = -Ws.B * G.C;
  B.block(os, iw, ns, p) = Ws.B;
  B.block(os, iu, ns, m) = -Ws.B * G.D;

  Eigen::Index row = 0;
  // z_t = W_T y
  C.block(row, ot, p, nt) = Wt.C;
  C.block(row, og, p, ng) = Wt.D * G.C;
  D.block(row, iu, p, m) = Wt.D * G.D;
  row += p;
  // z_ks = W_KS u
  C.block(row, oks, m, nks) = Wks.C;
  D.block(row, iu, m, m) = Wks.D;
  row += m;
  // z_s = W_S (w - y)
  C.block(row, os, p, ns) = Ws.C;
  C.block(row, og, p, ng) = -Ws.D * G.C;
  D.block(row, iw, p, p) = Ws.D;
  D.block(row, iu, p, m) = -Ws.D * G.D;
  row += p;
  // e = w - y
  C.block(row, og, p, ng) = -G.C;
  D.block(row, iw, p, p) = MatrixXd::Identity(p, p);
  D.block(row, iu, p, m) = -G.D;

  AugmentedPlant ap;
  ap.P = StateSpace(A, B, C, D);
  ap.nw = p;
  ap.nu = m;
  ap.nzt = p;
  ap.nzks = m;
  ap.nzs = p;
  ap.ne = p;
  return ap;
}

inline AugmentedPlant build_augmented_plant(const StateSpace& G, const MixedSensitivityWeights& w) {
  return build_augmented_plant(G, w.W_T.to_state_space(G.outputs()),
                               w.W_KS.to_state_space(G.inputs()),
                               w.W_S.to_state_space(G.outputs()));
}

}  // namespace rhinf
