#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhinf/linsys/filter.hpp"

namespace rhinf {

/// Scalar parameters of the three mixed-sensitivity weighting filters
///   W_T  = (1/T_min)  (s + w_zt)  / (s + w_nt)
///   W_KS = (1/KS_min) (s + w_zks) / (s + w_nks)
///   W_S  = (1/S_max)  (s + w_zs)  / (s + w_ns)
struct WeightingFilterSpec {
  double T_max = 1, T_min = 1, KS_max = 1, KS_min = 1, S_max = 1, S_min = 1;
  double w_ns = 1, w_zt = 1, w_nt = 1, w_zks = 1, w_nks = 1, w_zs = 1;

  void validate() const {
    for (double v : {T_max, T_min, KS_max, KS_min, S_max, S_min, w_ns, w_zt, w_nt, w_zks, w_nks, w_zs})
      if (!(v > 0.0)) throw std::invalid_argument("WeightingFilterSpec: all parameters must be positive");
  }
};

enum class ControllerMode { turtle, yaw, ascend, descend };

inline std::string to_string(ControllerMode m) {
  switch (m) {
    case ControllerMode::turtle: return "turtle";
    case ControllerMode::yaw: return "yaw";
    case ControllerMode::ascend: return "ascend";
    case ControllerMode::descend: return "descend";
  }
  return "?";
}

inline ControllerMode mode_from_string(const std::string& s) {
  if (s == "turtle") return ControllerMode::turtle;
  if (s == "yaw") return ControllerMode::yaw;
  if (s == "ascend") return ControllerMode::ascend;
  if (s == "descend") return ControllerMode::descend;
  throw std::invalid_argument("unknown controller mode: " + s);
}

/// Built-in filter parameter presets, one per controller mode.
inline WeightingFilterSpec weight_preset(ControllerMode mode) {
  WeightingFilterSpec w;
  switch (mode) {
    case ControllerMode::turtle:
      w.T_max = std::sqrt(5.0);  w.T_min = 0.01;
      w.KS_max = 10.0;           w.KS_min = 0.01;
      w.S_max = 2.0 * std::sqrt(2.0); w.S_min = 0.001;
      w.w_ns = 0.00625 * std::sqrt(2.0);
      w.w_zt = 25.0;  w.w_nt = 2500.0 * std::sqrt(5.0);
      w.w_zks = 200.0; w.w_nks = 2e5;
      w.w_zs = 25.0;
      return w;
    case ControllerMode::yaw:
      w.T_max = std::sqrt(2.2);  w.T_min = 0.01;
      w.KS_max = 0.8;            w.KS_min = 0.01;
      w.S_max = std::sqrt(2.0);  w.S_min = 0.01;
      w.w_ns = 0.001 * std::sqrt(2.0);
      w.w_zt = 0.2;  w.w_nt = 20.0 * std::sqrt(2.2);
      w.w_zks = 0.8; w.w_nks = 64.0;
      w.w_zs = 0.2;
      return w;
    case ControllerMode::ascend:
    case ControllerMode::descend:
      w.T_max = std::sqrt(2.0);  w.T_min = 0.01;
      w.KS_max = 0.5;            w.KS_min = 0.01;
      w.S_max = std::sqrt(2.0);  w.S_min = 0.01;
      w.w_ns = 0.001 * std::sqrt(2.0);
      w.w_zt = 0.2;  w.w_nt = 20.0 * std::sqrt(2.0);
      w.w_zks = 0.5; w.w_nks = 25.0;
      w.w_zs = 0.2;
      return w;
  }
  throw std::invalid_argument("weight_preset: bad mode");
}

struct MixedSensitivityWeights {
  FirstOrderFilter W_T, W_KS, W_S;
};

inline MixedSensitivityWeights make_weights(const WeightingFilterSpec& spec) {
  spec.validate();
  MixedSensitivityWeights w;
  w.W_T = FirstOrderFilter(1.0 / spec.T_min, spec.w_zt, spec.w_nt);
  w.W_KS = FirstOrderFilter(1.0 / spec.KS_min, spec.w_zks, spec.w_nks);
  w.W_S = FirstOrderFilter(1.0 / spec.S_max, spec.w_zs, spec.w_ns);
  return w;
}

/// Conservative L2 bound ||du_i||_2 <= |W_T(jw)| sqrt(t) on the input
/// disturbance rejected under a unit step command of duration t.
inline double max_input_disturbance(const FirstOrderFilter& W_T, double omega, double t) {
  if (t < 0.0) throw std::invalid_argument("max_input_disturbance: t must be nonnegative");
  return W_T.magnitude(omega) * std::sqrt(t);
}

struct DisturbanceBound {
  double wt_mag = 0.0;      // |W_T(jw)| at the design frequency
  double omega = 0.0;       // rad/s
  double bound_coeff = 0.0; // ||du_i||_2 <= bound_coeff * sqrt(t)
};

inline DisturbanceBound disturbance_bound(const FirstOrderFilter& W_T, double omega) {
  DisturbanceBound b;
  b.omega = omega;
  b.wt_mag = W_T.magnitude(omega);
  b.bound_coeff = b.wt_mag;
  return b;
}

/// Smallest constant mixing factor keeping the loop inside the disturbance
/// bound:  q >= 1 - wt_mag ||u|| / ||u - a||, clamped to [0, 1].
inline double min_mixing_factor(double wt_mag, const std::vector<double>& u,
                                const std::vector<double>& a) {
  if (u.size() != a.size())
    throw std::invalid_argument("min_mixing_factor: signals must have equal length");
  double nu = 0.0, nd = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    nu += u[i] * u[i];
    const double d = u[i] - a[i];
    nd += d * d;
  }
  nu = std::sqrt(nu);
  nd = std::sqrt(nd);
  if (nd == 0.0) return 0.0;  // zero disturbance, bound vacuous
  const double q = 1.0 - wt_mag * nu / nd;
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace rhinf
