#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "rhinf/ppo/network.hpp"

namespace rhinf {

/// First-order adaptive-moment optimizer over a network's parameter list
/// plus any extra standalone tensors (the policy log-std).
class Adam {
 public:
  Adam(double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(std::vector<LstmNet::ParamRef> params, double lr) {
    if (m_.empty()) {
      for (const auto& p : params) {
        m_.push_back(MatrixXd::Zero(p.value->rows(), p.value->cols()));
        v_.push_back(MatrixXd::Zero(p.value->rows(), p.value->cols()));
      }
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params.size(); ++i) {
      const MatrixXd& g = *params[i].grad;
      m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
      v_[i] = (beta2_ * v_[i].array() + (1.0 - beta2_) * g.array().square()).matrix();
      *params[i].value -=
          (lr * (m_[i].array() / bc1) / ((v_[i].array() / bc2).sqrt() + eps_)).matrix();
    }
  }

  void reset() {
    m_.clear();
    v_.clear();
    t_ = 0;
  }

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<MatrixXd> m_, v_;
};

/// lr = max(floor, lr0 * decay^epoch).
inline double lr_schedule(int epoch, double lr0, double decay, double floor) {
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("lr_schedule: decay must be in (0, 1)");
  return std::max(floor, lr0 * std::pow(decay, epoch));
}

}  // namespace rhinf
