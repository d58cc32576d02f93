#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhinf/hinf/augmented.hpp"
#include "rhinf/hinf/plants.hpp"
#include "rhinf/hinf/weights.hpp"
#include "rhinf/linsys/discretize.hpp"
#include "rhinf/linsys/hinf_norm.hpp"
#include "rhinf/linsys/riccati.hpp"

namespace rhinf {

namespace detail {

// Output-feedback synthesis data: x' = Ax + B1 w + B2 u, z = C1 x + D11 w + D12 u,
// y = C2 x + D21 w. D22 must vanish (all plants here are strictly proper).
struct GeneralPlant {
  MatrixXd A, B1, B2, C1, C2, D11, D12, D21;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m1() const { return B1.cols(); }
  Eigen::Index m2() const { return B2.cols(); }
  Eigen::Index p1() const { return C1.rows(); }
  Eigen::Index p2() const { return C2.rows(); }
};

inline GeneralPlant split_plant(const AugmentedPlant& ap) {
  const StateSpace& P = ap.P;
  const Eigen::Index nz = ap.nz(), ne = ap.ne, nw = ap.nw, nu = ap.nu;
  GeneralPlant g;
  g.A = P.A;
  g.B1 = P.B.leftCols(nw);
  g.B2 = P.B.rightCols(nu);
  g.C1 = P.C.topRows(nz);
  g.C2 = P.C.bottomRows(ne);
  g.D11 = P.D.topLeftCorner(nz, nw);
  g.D12 = P.D.topRightCorner(nz, nu);
  g.D21 = P.D.bottomLeftCorner(ne, nw);
  MatrixXd D22 = P.D.bottomRightCorner(ne, nu);
  if (D22.norm() > 0.0)
    throw std::invalid_argument("synthesis: D22 must be zero (strictly proper plant path)");
  return g;
}

// Unitary/scaling transforms bringing D12 to [0; I] and D21 to [0, I].
struct NormalizedPlant {
  GeneralPlant g;
  MatrixXd u_from_utilde;  // u = u_from_utilde * u~
  MatrixXd ytilde_from_y;  // y~ = ytilde_from_y * y
};

inline NormalizedPlant normalize_plant(const GeneralPlant& in) {
  GeneralPlant g = in;
  const Eigen::Index p1 = g.p1(), m2 = g.m2(), p2 = g.p2(), m1 = g.m1();

  NormalizedPlant np;
  // z-side: rows spanning range(D12) moved to the bottom, D12 -> [0; I].
  {
    Eigen::JacobiSVD<MatrixXd> svd(g.D12, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(m2 - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0)))
      throw std::invalid_argument("synthesis: D12 rank deficient");
    MatrixXd U = svd.matrixU();  // p1 x p1
    MatrixXd Ubar(p1, p1);
    Ubar.leftCols(p1 - m2) = U.rightCols(p1 - m2);
    Ubar.rightCols(m2) = U.leftCols(m2);
    np.u_from_utilde = svd.matrixV() * svd.singularValues().head(m2).cwiseInverse().asDiagonal();
    g.C1 = (Ubar.transpose() * g.C1).eval();
    g.D11 = (Ubar.transpose() * g.D11).eval();
    g.B2 = (g.B2 * np.u_from_utilde).eval();
    g.D12 = MatrixXd::Zero(p1, m2);
    g.D12.bottomRows(m2) = MatrixXd::Identity(m2, m2);
  }
  // w-side: columns spanning rowspace(D21) moved to the right, D21 -> [0, I].
  {
    Eigen::JacobiSVD<MatrixXd> svd(g.D21, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(p2 - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0)))
      throw std::invalid_argument("synthesis: D21 must have full row rank");
    MatrixXd V = svd.matrixV();  // m1 x m1
    MatrixXd Vbar(m1, m1);
    Vbar.leftCols(m1 - p2) = V.rightCols(m1 - p2);
    Vbar.rightCols(p2) = V.leftCols(p2);
    np.ytilde_from_y =
        svd.singularValues().head(p2).cwiseInverse().asDiagonal() * svd.matrixU().transpose();
    g.B1 = (g.B1 * Vbar).eval();
    g.D11 = (g.D11 * Vbar).eval();
    g.C2 = (np.ytilde_from_y * g.C2).eval();
    g.D21 = MatrixXd::Zero(p2, m1);
    g.D21.rightCols(p2) = MatrixXd::Identity(p2, p2);
  }
  np.g = g;
  return np;
}

struct CentralController {
  StateSpace K;
};

// Two-Riccati solvability test at level gamma; returns the central controller
// in normalized coordinates on success, otherwise records the failed condition.
inline std::optional<CentralController> try_gamma(const GeneralPlant& g, double gamma,
                                                  std::string* reason) {
  const Eigen::Index n = g.n(), m1 = g.m1(), m2 = g.m2(), p1 = g.p1(), p2 = g.p2();
  auto fail = [&](const std::string& r) -> std::optional<CentralController> {
    if (reason) *reason = r;
    return std::nullopt;
  };

  const MatrixXd D1111 = g.D11.topLeftCorner(p1 - m2, m1 - p2);
  const MatrixXd D1112 = g.D11.topRightCorner(p1 - m2, p2);
  const MatrixXd D1121 = g.D11.bottomLeftCorner(m2, m1 - p2);
  const MatrixXd D1122 = g.D11.bottomRightCorner(m2, p2);

  {
    MatrixXd top(p1 - m2, m1);
    top.leftCols(m1 - p2) = D1111;
    top.rightCols(p2) = D1112;
    MatrixXd left(p1, m1 - p2);
    left.topRows(p1 - m2) = D1111;
    left.bottomRows(m2) = D1121;
    const double bound = std::max(max_singular_value(top), max_singular_value(left));
    if (gamma <= bound * (1.0 + 1e-9))
      return fail("gamma below the unavoidable feedthrough bound " + std::to_string(bound));
  }

  const double g2 = gamma * gamma;
  MatrixXd B(n, m1 + m2), C(p1 + p2, n), D1d(p1, m1 + m2), Dd1(p1 + p2, m1);
  B.leftCols(m1) = g.B1;
  B.rightCols(m2) = g.B2;
  C.topRows(p1) = g.C1;
  C.bottomRows(p2) = g.C2;
  D1d.leftCols(m1) = g.D11;
  D1d.rightCols(m2) = g.D12;
  Dd1.topRows(p1) = g.D11;
  Dd1.bottomRows(p2) = g.D21;

  MatrixXd R = D1d.transpose() * D1d;
  R.topLeftCorner(m1, m1) -= g2 * MatrixXd::Identity(m1, m1);
  MatrixXd Rt = Dd1 * Dd1.transpose();
  Rt.topLeftCorner(p1, p1) -= g2 * MatrixXd::Identity(p1, p1);

  Eigen::FullPivLU<MatrixXd> luR(R), luRt(Rt);
  if (!luR.isInvertible()) return fail("R singular at this gamma");
  if (!luRt.isInvertible()) return fail("R~ singular at this gamma");

  detail::HamiltonianRic hx;
  {
    MatrixXd M1 = luR.solve(D1d.transpose() * g.C1);  // (m1+m2) x n
    MatrixXd M2 = luR.solve(B.transpose());           // (m1+m2) x n
    hx.H11 = g.A - B * M1;
    hx.H12 = -B * M2;
    hx.H21 = -g.C1.transpose() * g.C1 + g.C1.transpose() * D1d * M1;
    hx.H12 = 0.5 * (hx.H12 + hx.H12.transpose()).eval();
    hx.H21 = 0.5 * (hx.H21 + hx.H21.transpose()).eval();
  }
  std::string why;
  auto X = detail::solve_ric(hx, &why);
  if (!X) return fail("X Riccati: " + why);

  detail::HamiltonianRic hy;
  {
    MatrixXd N1 = luRt.solve(Dd1 * g.B1.transpose());  // (p1+p2) x n
    MatrixXd N2 = luRt.solve(C);                       // (p1+p2) x n
    hy.H11 = g.A.transpose() - C.transpose() * N1;
    hy.H12 = -C.transpose() * N2;
    hy.H21 = -g.B1 * g.B1.transpose() + g.B1 * Dd1.transpose() * N1;
    hy.H12 = 0.5 * (hy.H12 + hy.H12.transpose()).eval();
    hy.H21 = 0.5 * (hy.H21 + hy.H21.transpose()).eval();
  }
  auto Y = detail::solve_ric(hy, &why);
  if (!Y) return fail("Y Riccati: " + why);

  const double x_scale = std::max(1.0, X->norm());
  const double y_scale = std::max(1.0, Y->norm());
  Eigen::SelfAdjointEigenSolver<MatrixXd> esx(*X), esy(*Y);
  if (n > 0 && esx.eigenvalues()(0) < -1e-8 * x_scale) return fail("X not positive semidefinite");
  if (n > 0 && esy.eigenvalues()(0) < -1e-8 * y_scale) return fail("Y not positive semidefinite");
  if (n > 0) {
    Eigen::EigenSolver<MatrixXd> esxy((*X) * (*Y), false);
    const double rho = esxy.eigenvalues().cwiseAbs().maxCoeff();
    if (rho >= g2 * (1.0 - 1e-9)) return fail("spectral radius rho(XY) >= gamma^2");
  }

  // Central controller.
  MatrixXd F = -luR.solve(D1d.transpose() * g.C1 + B.transpose() * (*X));
  MatrixXd H = -((g.B1 * Dd1.transpose() + (*Y) * C.transpose()) * luRt.inverse());
  const MatrixXd F12 = F.middleRows(m1 - p2, p2);
  const MatrixXd F2 = F.bottomRows(m2);
  const MatrixXd H12 = H.middleCols(p1 - m2, m2);
  const MatrixXd H2 = H.rightCols(p2);

  MatrixXd G2m = g2 * MatrixXd::Identity(p1 - m2, p1 - m2) - D1111 * D1111.transpose();
  MatrixXd G1m = g2 * MatrixXd::Identity(m1 - p2, m1 - p2) - D1111.transpose() * D1111;
  Eigen::LLT<MatrixXd> lltG2(G2m), lltG1(G1m);
  if ((p1 - m2 > 0 && lltG2.info() != Eigen::Success) ||
      (m1 - p2 > 0 && lltG1.info() != Eigen::Success))
    return fail("feedthrough bound violated (gamma too small)");

  MatrixXd Dh11 = -D1121 * D1111.transpose() * lltG2.solve(D1112) - D1122;
  MatrixXd S12 = MatrixXd::Identity(m2, m2) - D1121 * lltG1.solve(D1121.transpose());
  MatrixXd S21 = MatrixXd::Identity(p2, p2) - D1112.transpose() * lltG2.solve(D1112);
  Eigen::LLT<MatrixXd> llt12(S12), llt21(S21);
  if (llt12.info() != Eigen::Success || llt21.info() != Eigen::Success)
    return fail("controller feedthrough factorization failed");
  MatrixXd Dh12 = MatrixXd(llt12.matrixL());
  MatrixXd Dh21 = MatrixXd(llt21.matrixL()).transpose();

  MatrixXd Z = MatrixXd::Identity(n, n) - (*Y) * (*X) / g2;
  Eigen::FullPivLU<MatrixXd> luZ(Z);
  if (!luZ.isInvertible()) return fail("I - YX/gamma^2 singular");

  MatrixXd Bh2 = luZ.solve((g.B2 + H12) * Dh12);
  MatrixXd Ch2 = -Dh21 * (g.C2 + F12);
  MatrixXd Dh12_inv_Dh11 = Dh12.triangularView<Eigen::Lower>().solve(Dh11);
  MatrixXd Bh1 = -luZ.solve(H2) + Bh2 * Dh12_inv_Dh11;
  MatrixXd Dh21_inv_Ch2 = -(g.C2 + F12);  // Dh21^{-1} Ch2
  MatrixXd Ch1 = F2 + Dh11 * Dh21_inv_Ch2;
  MatrixXd Ah = g.A + B * F + Bh1 * Dh21_inv_Ch2;

  CentralController cc;
  cc.K = StateSpace(Ah, Bh1, Ch1, Dh11);
  return cc;
}

// Closed loop of P with K (negative feedback is already encoded in P's e-output).
inline StateSpace close_loop(const GeneralPlant& g, const StateSpace& K) {
  const Eigen::Index n = g.n(), nk = K.states();
  MatrixXd A(n + nk, n + nk), B(n + nk, g.m1());
  MatrixXd C(g.p1(), n + nk), D(g.p1(), g.m1());
  A.topLeftCorner(n, n) = g.A + g.B2 * K.D * g.C2;
  A.topRightCorner(n, nk) = g.B2 * K.C;
  A.bottomLeftCorner(nk, n) = K.B * g.C2;
  A.bottomRightCorner(nk, nk) = K.A;
  B.topRows(n) = g.B1 + g.B2 * K.D * g.D21;
  B.bottomRows(nk) = K.B * g.D21;
  C.leftCols(n) = g.C1 + g.D12 * K.D * g.C2;
  C.rightCols(nk) = g.D12 * K.C;
  D = g.D11 + g.D12 * K.D * g.D21;
  return StateSpace(A, B, C, D);
}

}  // namespace detail

struct ClampRange {
  double lo = -1.0;
  double hi = 1.0;
};

/// Synthesized controller with its discrete runtime form and actuator clamps.
struct HinfController {
  StateSpace K;
  double gamma_achieved = 0.0;
  DiscreteStateSpace runtime;
  std::vector<ClampRange> clamps;
  ControllerMode mode = ControllerMode::turtle;
  bool gamma_leq_one = true;  // soft check against the design target
};

struct SynthesisOptions {
  double gamma_lo = 0.1;
  double gamma_hi = 100.0;
  double gamma_tol = 1e-3;
  double eps_reg = 1e-6;      // feedthrough regularization on the W_KS path
  double verify_tol = 1e-9;   // closed-loop norm measurement tolerance
};

struct SynthesisResult {
  StateSpace K;
  double gamma_achieved = 0.0;
  double closed_loop_norm = 0.0;
};

/// Suboptimal H-infinity output-feedback synthesis by bisection over the
/// two-Riccati solvability conditions. Every candidate controller is also
/// verified against the actual closed-loop norm before being accepted.
inline SynthesisResult synthesize_gamma(const AugmentedPlant& ap,
                                        const SynthesisOptions& opt = {}) {
  detail::GeneralPlant raw = detail::split_plant(ap);
  if (!detail::is_stabilizable(raw.A, raw.B2))
    throw std::runtime_error("synthesis: (A, B2) not stabilizable");
  if (!detail::is_detectable(raw.A, raw.C2))
    throw std::runtime_error("synthesis: (C2, A) not detectable");
  {
    // Regularize the W_KS feedthrough block if D12 is rank-deficient.
    Eigen::JacobiSVD<MatrixXd> svd(raw.D12);
    const Eigen::Index r = std::min(raw.D12.rows(), raw.D12.cols());
    if (r > 0 && svd.singularValues()(r - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0)))
      raw.D12.block(ap.nzt, 0, std::min(ap.nzks, ap.nu), ap.nu) +=
          opt.eps_reg * MatrixXd::Identity(std::min(ap.nzks, ap.nu), ap.nu);
  }
  detail::NormalizedPlant np = normalize_plant(raw);

  struct Candidate {
    StateSpace K;
    double norm = 0.0;
  };
  std::string reason = "gamma bracket exhausted";
  auto attempt = [&](double gamma) -> std::optional<Candidate> {
    auto cc = detail::try_gamma(np.g, gamma, &reason);
    if (!cc) return std::nullopt;
    // Back to original coordinates.
    StateSpace K(cc->K.A, cc->K.B * np.ytilde_from_y, np.u_from_utilde * cc->K.C,
                 np.u_from_utilde * cc->K.D * np.ytilde_from_y);
    StateSpace cl = detail::close_loop(raw, K);
    if (!detail::is_hurwitz(cl.A)) {
      reason = "constructed controller failed internal stability check";
      return std::nullopt;
    }
    double norm;
    try {
      norm = hinf_norm(cl, opt.verify_tol);
    } catch (const std::exception& e) {
      reason = std::string("closed-loop norm verification failed: ") + e.what();
      return std::nullopt;
    }
    if (norm > gamma * (1.0 + 1e-6)) {
      reason = "closed-loop norm " + std::to_string(norm) + " exceeds gamma";
      return std::nullopt;
    }
    return Candidate{K, norm};
  };

  double hi = opt.gamma_hi;
  auto best = attempt(hi);
  if (!best)
    throw std::runtime_error("synthesis: no stabilizing controller at gamma <= " +
                             std::to_string(hi) + " (" + reason + ")");
  double lo = opt.gamma_lo;
  while (hi - lo > opt.gamma_tol) {
    const double mid = 0.5 * (lo + hi);
    auto cand = attempt(mid);
    if (cand) {
      hi = mid;
      best = std::move(cand);
    } else {
      lo = mid;
    }
  }
  SynthesisResult res;
  res.K = best->K;
  res.closed_loop_norm = best->norm;
  res.gamma_achieved = std::max(hi, best->norm);
  return res;
}

inline std::vector<ClampRange> mode_clamps(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::turtle: return {{-1, 1}, {-1, 1}};
    case ControllerMode::yaw: return {{-1, 1}};
    case ControllerMode::ascend: return {{-1, 1}, {-1, -0.5}, {0.4, 0.6}};
    case ControllerMode::descend: return {{-1, 1}, {0.5, 1}, {-0.6, -0.4}};
  }
  throw std::invalid_argument("mode_clamps: bad mode");
}

/// Full preset pipeline: design plant + Table-style weights -> packaged controller.
inline HinfController synthesize_preset(ControllerMode mode, const SynthesisOptions& opt = {}) {
  const StateSpace G = design_plant(mode);
  const MixedSensitivityWeights w = make_weights(weight_preset(mode));
  AugmentedPlant ap = build_augmented_plant(G, w);
  SynthesisResult res = synthesize_gamma(ap, opt);
  HinfController c;
  c.K = res.K;
  c.gamma_achieved = res.gamma_achieved;
  c.mode = mode;
  c.runtime = discretize(res.K, 1.0 / loop_rate_hz(mode), DiscretizeMethod::bilinear);
  c.clamps = mode_clamps(mode);
  c.gamma_leq_one = res.gamma_achieved <= 1.0;
  return c;
}

inline nlohmann::json to_json(const HinfController& c) {
  nlohmann::json clamps = nlohmann::json::array();
  for (const auto& r : c.clamps) clamps.push_back({r.lo, r.hi});
  return {{"kind", "hinf"},
          {"mode", to_string(c.mode)},
          {"gamma_achieved", c.gamma_achieved},
          {"gamma_leq_one", c.gamma_leq_one},
          {"K", to_json(c.K)},
          {"runtime", to_json(c.runtime)},
          {"clamps", clamps}};
}

inline HinfController hinf_controller_from_json(const nlohmann::json& j) {
  HinfController c;
  c.mode = mode_from_string(j.at("mode").get<std::string>());
  c.gamma_achieved = j.at("gamma_achieved").get<double>();
  c.gamma_leq_one = j.at("gamma_leq_one").get<bool>();
  c.K = state_space_from_json(j.at("K"));
  c.runtime = discrete_from_json(j.at("runtime"));
  for (const auto& r : j.at("clamps")) c.clamps.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  return c;
}

}  // namespace rhinf
