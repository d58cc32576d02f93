#pragma once

#include <stdexcept>
#include <vector>

namespace rhinf {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

/// Generalized advantage estimation over one trajectory slice.
/// `bootstrap` is V(s_T) and is ignored after terminal steps.
inline GaeResult gae(const std::vector<double>& rewards, const std::vector<double>& values,
                     const std::vector<bool>& dones, double gamma, double lambda,
                     double bootstrap = 0.0) {
  const size_t T = rewards.size();
  if (values.size() != T || dones.size() != T)
    throw std::invalid_argument("gae: length mismatch");
  GaeResult out;
  out.advantages.resize(T);
  out.returns.resize(T);
  double adv = 0.0;
  for (size_t i = T; i-- > 0;) {
    const double v_next = dones[i] ? 0.0 : (i + 1 < T ? values[i + 1] : bootstrap);
    const double delta = rewards[i] + gamma * v_next - values[i];
    adv = delta + (dones[i] ? 0.0 : gamma * lambda * adv);
    out.advantages[i] = adv;
    out.returns[i] = adv + values[i];
  }
  return out;
}

}  // namespace rhinf
