#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rhinf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Layer widths of one actor/critic network: obs -> LSTM(L) -> F1 -> F2 -> out.
struct NetworkSpec {
  int obs = 0, lstm = 0, f1 = 0, f2 = 0, out = 0;
};

inline NetworkSpec turtle_policy_spec() { return {5, 24, 24, 24, 2}; }
inline NetworkSpec turtle_value_spec() { return {5, 64, 64, 64, 1}; }
inline NetworkSpec blimp_policy_spec() { return {8, 64, 64, 64, 4}; }
inline NetworkSpec blimp_value_spec() { return {8, 196, 196, 196, 1}; }

struct LstmState {
  MatrixXd h;  // L x B
  MatrixXd c;  // L x B

  static LstmState zero(int L, int B = 1) { return {MatrixXd::Zero(L, B), MatrixXd::Zero(L, B)}; }
};

namespace detail {
inline MatrixXd sigmoid_m(const MatrixXd& x) {
  return ((-x.array()).exp() + 1.0).inverse().matrix();
}
}  // namespace detail

/// Recurrent network with manually implemented backpropagation; the analytic
/// gradients are pinned against central finite differences in the tests.
/// Biases are stored as Nx1 matrices so every parameter shares one interface.
class LstmNet {
 public:
  LstmNet() = default;

  explicit LstmNet(const NetworkSpec& spec) : spec_(spec) {
    const int L = spec.lstm;
    Wx = MatrixXd::Zero(4 * L, spec.obs);
    Wh = MatrixXd::Zero(4 * L, L);
    b = MatrixXd::Zero(4 * L, 1);
    W1 = MatrixXd::Zero(spec.f1, L);
    b1 = MatrixXd::Zero(spec.f1, 1);
    W2 = MatrixXd::Zero(spec.f2, spec.f1);
    b2 = MatrixXd::Zero(spec.f2, 1);
    W3 = MatrixXd::Zero(spec.out, spec.f2);
    b3 = MatrixXd::Zero(spec.out, 1);
    zero_grad();
  }

  const NetworkSpec& spec() const { return spec_; }

  /// Fan-in scaled uniform init; the output layer gets small weights (0.01).
  void init(std::mt19937_64& rng, double last_layer_scale = 0.01) {
    auto fill = [&](MatrixXd& m, double scale) {
      std::uniform_real_distribution<double> u(-scale, scale);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
    };
    fill(Wx, 1.0 / std::sqrt(double(spec_.obs)));
    fill(Wh, 1.0 / std::sqrt(double(spec_.lstm)));
    fill(W1, 1.0 / std::sqrt(double(spec_.lstm)));
    fill(W2, 1.0 / std::sqrt(double(spec_.f1)));
    fill(W3, last_layer_scale / std::sqrt(double(spec_.f2)));
    b.setZero();
    b.block(spec_.lstm, 0, spec_.lstm, 1).setConstant(1.0);  // forget-gate bias
    b1.setZero();
    b2.setZero();
    b3.setZero();
  }

  struct Cache {
    std::vector<MatrixXd> x, hprev, cprev, gi, gf, gg, go, tanh_c, z1, z2, y;
    LstmState final_state;
    int B = 0;
  };

  /// Runs a whole chunk (time-major, each entry obs x batch) caching
  /// activations for backward().
  Cache forward(const std::vector<MatrixXd>& xs, const LstmState& s0) const {
    Cache k;
    const int L = spec_.lstm;
    k.B = static_cast<int>(xs.empty() ? 0 : xs[0].cols());
    MatrixXd h = s0.h, c = s0.c;
    for (const MatrixXd& x : xs) {
      MatrixXd pre = (Wx * x + Wh * h).colwise() + b.col(0);
      MatrixXd i = detail::sigmoid_m(pre.topRows(L));
      MatrixXd f = detail::sigmoid_m(pre.middleRows(L, L));
      MatrixXd g = pre.middleRows(2 * L, L).array().tanh().matrix();
      MatrixXd o = detail::sigmoid_m(pre.bottomRows(L));
      k.x.push_back(x);
      k.hprev.push_back(h);
      k.cprev.push_back(c);
      c = (f.array() * c.array() + i.array() * g.array()).matrix();
      MatrixXd tc = c.array().tanh().matrix();
      h = (o.array() * tc.array()).matrix();
      k.gi.push_back(i);
      k.gf.push_back(f);
      k.gg.push_back(g);
      k.go.push_back(o);
      k.tanh_c.push_back(tc);
      MatrixXd z1 = (((W1 * h).colwise() + b1.col(0)).array().tanh()).matrix();
      MatrixXd z2 = (((W2 * z1).colwise() + b2.col(0)).array().tanh()).matrix();
      k.z1.push_back(z1);
      k.z2.push_back(z2);
      k.y.push_back((W3 * z2).colwise() + b3.col(0));
    }
    k.final_state = {h, c};
    return k;
  }

  /// Single-step convenience used during rollout collection (B = 1).
  VectorXd step(const VectorXd& x, LstmState& state) const {
    Cache k = forward({MatrixXd(x)}, state);
    state = k.final_state;
    return k.y[0].col(0);
  }

  /// Accumulates parameter gradients of sum_t <dy[t], y[t]>.
  void backward(const Cache& k, const std::vector<MatrixXd>& dy) {
    const int L = spec_.lstm;
    const int T = static_cast<int>(k.x.size());
    MatrixXd dh_next = MatrixXd::Zero(L, k.B);
    MatrixXd dc_next = MatrixXd::Zero(L, k.B);
    for (int t = T - 1; t >= 0; --t) {
      const MatrixXd& dyt = dy[t];
      gW3 += dyt * k.z2[t].transpose();
      gb3.col(0) += dyt.rowwise().sum();
      MatrixXd dz2 =
          ((W3.transpose() * dyt).array() * (1.0 - k.z2[t].array().square())).matrix();
      gW2 += dz2 * k.z1[t].transpose();
      gb2.col(0) += dz2.rowwise().sum();
      MatrixXd dz1 =
          ((W2.transpose() * dz2).array() * (1.0 - k.z1[t].array().square())).matrix();
      MatrixXd h_t = (k.go[t].array() * k.tanh_c[t].array()).matrix();
      gW1 += dz1 * h_t.transpose();
      gb1.col(0) += dz1.rowwise().sum();

      MatrixXd dh = W1.transpose() * dz1 + dh_next;
      MatrixXd do_ = (dh.array() * k.tanh_c[t].array()).matrix();
      MatrixXd dc =
          ((dh.array() * k.go[t].array()) * (1.0 - k.tanh_c[t].array().square())).matrix() +
          dc_next;
      MatrixXd di = (dc.array() * k.gg[t].array()).matrix();
      MatrixXd dg = (dc.array() * k.gi[t].array()).matrix();
      MatrixXd df = (dc.array() * k.cprev[t].array()).matrix();
      dc_next = (dc.array() * k.gf[t].array()).matrix();

      MatrixXd dpre(4 * L, k.B);
      dpre.topRows(L) = (di.array() * k.gi[t].array() * (1.0 - k.gi[t].array())).matrix();
      dpre.middleRows(L, L) =
          (df.array() * k.gf[t].array() * (1.0 - k.gf[t].array())).matrix();
      dpre.middleRows(2 * L, L) = (dg.array() * (1.0 - k.gg[t].array().square())).matrix();
      dpre.bottomRows(L) = (do_.array() * k.go[t].array() * (1.0 - k.go[t].array())).matrix();

      gWx += dpre * k.x[t].transpose();
      gWh += dpre * k.hprev[t].transpose();
      gb.col(0) += dpre.rowwise().sum();
      dh_next = Wh.transpose() * dpre;
    }
  }

  void zero_grad() {
    auto z = [](const MatrixXd& m) { return MatrixXd::Zero(m.rows(), m.cols()); };
    gWx = z(Wx); gWh = z(Wh); gb = z(b);
    gW1 = z(W1); gb1 = z(b1);
    gW2 = z(W2); gb2 = z(b2);
    gW3 = z(W3); gb3 = z(b3);
  }

  struct ParamRef {
    std::string name;
    MatrixXd* value;
    MatrixXd* grad;
  };

  std::vector<ParamRef> params() {
    return {{"Wx", &Wx, &gWx}, {"Wh", &Wh, &gWh}, {"b", &b, &gb},
            {"W1", &W1, &gW1}, {"b1", &b1, &gb1}, {"W2", &W2, &gW2},
            {"b2", &b2, &gb2}, {"W3", &W3, &gW3}, {"b3", &b3, &gb3}};
  }

  MatrixXd Wx, Wh, W1, W2, W3, b, b1, b2, b3;
  MatrixXd gWx, gWh, gW1, gW2, gW3, gb, gb1, gb2, gb3;

 private:
  NetworkSpec spec_;
};

}  // namespace rhinf
