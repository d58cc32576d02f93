#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "rhinf/ppo/adam.hpp"
#include "rhinf/ppo/gae.hpp"
#include "rhinf/ppo/network.hpp"

namespace rhinf {

struct PpoConfig {
  int n_step = 50000;     // environment steps per env
  int n_env = 8;
  int episode_len = 2000;
  double loop_rate = 100.0;  // Hz
  int n_epoch = 1000;     // buffer length per env
  int n_batch = 100;      // mini-batch size in samples
  int n_update = 20;      // passes per update phase
  double alpha0 = 5e-5;   // initial policy lr
  double beta0 = 1e-4;    // initial value lr
  double d_kl = std::numeric_limits<double>::infinity();
  double gamma = 0.999;
  double lambda = 0.95;
  double lr_decay = 0.99;       // per update epoch
  double lr_floor = 1e-5;
  double clip_ratio = 0.2;
  int bptt = 16;                // truncated backprop chunk length
  double init_log_std = -0.5;
  bool normalize_advantage = true;
};

inline PpoConfig turtle_ppo_config() { return PpoConfig{}; }

inline PpoConfig blimp_ppo_config(bool paper_scale = false) {
  PpoConfig c;
  c.n_step = paper_scale ? 86400 : 20000;
  c.n_env = paper_scale ? 7 : 4;
  c.episode_len = 2400;
  c.loop_rate = 10.0;
  c.n_epoch = 1920;
  c.n_batch = 128;
  c.n_update = 20;
  c.d_kl = 0.03;
  c.gamma = 0.99;
  c.lambda = 0.9;
  return c;
}

/// Diagonal Gaussian squashed through tanh. Log-probs are evaluated at the
/// stored pre-squash sample, so the squash correction is exact.
struct SquashedGaussian {
  static constexpr double kLog2Pi = 1.8378770664093453;
  static constexpr double kEps = 1e-8;

  static double log_prob(const VectorXd& pre, const VectorXd& mu, const VectorXd& log_std) {
    double lp = 0.0;
    for (Eigen::Index d = 0; d < pre.size(); ++d) {
      const double sd = std::exp(log_std(d));
      const double z = (pre(d) - mu(d)) / sd;
      const double t = std::tanh(pre(d));
      lp += -0.5 * z * z - log_std(d) - 0.5 * kLog2Pi - std::log(1.0 - t * t + kEps);
    }
    return lp;
  }

  // d logp / d mu and d logp / d log_std at fixed pre-squash sample.
  static void grads(const VectorXd& pre, const VectorXd& mu, const VectorXd& log_std,
                    VectorXd& dmu, VectorXd& dlogstd) {
    dmu.resize(pre.size());
    dlogstd.resize(pre.size());
    for (Eigen::Index d = 0; d < pre.size(); ++d) {
      const double sd = std::exp(log_std(d));
      const double z = (pre(d) - mu(d)) / sd;
      dmu(d) = z / sd;
      dlogstd(d) = z * z - 1.0;
    }
  }

  static VectorXd sample_pre(const VectorXd& mu, const VectorXd& log_std, std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    VectorXd pre(mu.size());
    for (Eigen::Index d = 0; d < mu.size(); ++d)
      pre(d) = mu(d) + std::exp(log_std(d)) * n01(rng);
    return pre;
  }

  static VectorXd squash(const VectorXd& pre) { return pre.array().tanh().matrix(); }
};

/// Actor with state-independent log-std, optimized jointly with the network.
struct Policy {
  LstmNet net;
  MatrixXd log_std;   // act x 1
  MatrixXd g_log_std;

  Policy() = default;
  Policy(const NetworkSpec& spec, double init_log_std)
      : net(spec),
        log_std(MatrixXd::Constant(spec.out, 1, init_log_std)),
        g_log_std(MatrixXd::Zero(spec.out, 1)) {}

  std::vector<LstmNet::ParamRef> params() {
    auto p = net.params();
    p.push_back({"log_std", &log_std, &g_log_std});
    return p;
  }

  void zero_grad() {
    net.zero_grad();
    g_log_std.setZero();
  }
};

/// Per-environment trajectory storage for one update phase.
struct EnvRollout {
  std::vector<VectorXd> obs;
  std::vector<VectorXd> pre_action;  // pre-squash samples
  std::vector<double> log_prob;
  std::vector<double> value;
  std::vector<double> reward;
  std::vector<bool> done;
  std::vector<LstmState> policy_state;  // state before the step (B = 1)
  std::vector<LstmState> value_state;
  double bootstrap_value = 0.0;

  size_t size() const { return obs.size(); }
  void clear() {
    obs.clear(); pre_action.clear(); log_prob.clear(); value.clear();
    reward.clear(); done.clear(); policy_state.clear(); value_state.clear();
    bootstrap_value = 0.0;
  }
};

struct RolloutBuffer {
  std::vector<EnvRollout> envs;

  explicit RolloutBuffer(int n_env = 0) : envs(n_env) {}
  bool full(int n_epoch) const {
    for (const auto& e : envs)
      if (static_cast<int>(e.size()) < n_epoch) return false;
    return !envs.empty();
  }
  void clear() {
    for (auto& e : envs) e.clear();
  }
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double kl = 0.0;
  int updates_done = 0;
  bool early_stopped = false;
};

namespace detail {

struct Chunk {
  int env = 0;
  int t0 = 0;
  int len = 0;
};

inline std::vector<Chunk> make_chunks(const RolloutBuffer& buf, int bptt) {
  std::vector<Chunk> chunks;
  for (int e = 0; e < static_cast<int>(buf.envs.size()); ++e) {
    const int T = static_cast<int>(buf.envs[e].size());
    for (int t0 = 0; t0 < T; t0 += bptt) chunks.push_back({e, t0, std::min(bptt, T - t0)});
  }
  return chunks;
}

}  // namespace detail

/// One clipped-surrogate update phase over a full buffer. Runs `n_update`
/// passes of mini-batches, stopping early once the KL estimate
/// mean(logp_old - logp_new) exceeds d_kl. Advantages are normalized per
/// mini-batch; value and policy use separate optimizers.
inline UpdateStats ppo_update(RolloutBuffer& buf, Policy& policy, LstmNet& value_net,
                              const PpoConfig& cfg, Adam& policy_opt, Adam& value_opt,
                              double lr_policy, double lr_value, std::mt19937_64& rng) {
  const int n_env = static_cast<int>(buf.envs.size());
  // Per-env GAE.
  std::vector<std::vector<double>> advantages(n_env), returns(n_env);
  for (int e = 0; e < n_env; ++e) {
    auto& r = buf.envs[e];
    GaeResult g = gae(r.reward, r.value, r.done, cfg.gamma, cfg.lambda, r.bootstrap_value);
    advantages[e] = std::move(g.advantages);
    returns[e] = std::move(g.returns);
  }

  auto chunks = detail::make_chunks(buf, cfg.bptt);
  const int chunks_per_mb =
      std::max(1, (cfg.n_batch + cfg.bptt - 1) / cfg.bptt);

  UpdateStats stats;
  double loss_p_acc = 0.0, loss_v_acc = 0.0;
  int loss_count = 0;

  const int act_dim = policy.net.spec().out;
  const int obs_dim = policy.net.spec().obs;

  for (int pass = 0; pass < cfg.n_update && !stats.early_stopped; ++pass) {
    std::shuffle(chunks.begin(), chunks.end(), rng);
    // Equal-length chunks are batched together; group by length.
    std::stable_sort(chunks.begin(), chunks.end(),
                     [](const detail::Chunk& a, const detail::Chunk& b) { return a.len > b.len; });
    for (size_t start = 0; start < chunks.size() && !stats.early_stopped;) {
      size_t end = std::min(start + chunks_per_mb, chunks.size());
      while (end > start + 1 && chunks[end - 1].len != chunks[start].len) --end;
      const int B = static_cast<int>(end - start);
      const int T = chunks[start].len;

      std::vector<MatrixXd> xs(T, MatrixXd(obs_dim, B));
      LstmState ps = LstmState::zero(policy.net.spec().lstm, B);
      LstmState vs = LstmState::zero(value_net.spec().lstm, B);
      for (int bi = 0; bi < B; ++bi) {
        const auto& ck = chunks[start + bi];
        const auto& env = buf.envs[ck.env];
        ps.h.col(bi) = env.policy_state[ck.t0].h.col(0);
        ps.c.col(bi) = env.policy_state[ck.t0].c.col(0);
        vs.h.col(bi) = env.value_state[ck.t0].h.col(0);
        vs.c.col(bi) = env.value_state[ck.t0].c.col(0);
        for (int t = 0; t < T; ++t) xs[t].col(bi) = env.obs[ck.t0 + t];
      }

      auto pk = policy.net.forward(xs, ps);
      auto vk = value_net.forward(xs, vs);

      // Advantage normalization over the mini-batch.
      const int N = T * B;
      double adv_mean = 0.0, adv_sq = 0.0;
      for (int bi = 0; bi < B; ++bi) {
        const auto& ck = chunks[start + bi];
        for (int t = 0; t < T; ++t) {
          const double a = advantages[ck.env][ck.t0 + t];
          adv_mean += a;
          adv_sq += a * a;
        }
      }
      adv_mean /= N;
      const double adv_std = std::sqrt(std::max(0.0, adv_sq / N - adv_mean * adv_mean));

      // Losses and output gradients.
      std::vector<MatrixXd> dy_p(T, MatrixXd::Zero(act_dim, B));
      std::vector<MatrixXd> dy_v(T, MatrixXd::Zero(1, B));
      VectorXd dlogstd_acc = VectorXd::Zero(act_dim);
      double loss_p = 0.0, loss_v = 0.0, kl = 0.0;
      const VectorXd log_std = policy.log_std.col(0);
      for (int bi = 0; bi < B; ++bi) {
        const auto& ck = chunks[start + bi];
        const auto& env = buf.envs[ck.env];
        for (int t = 0; t < T; ++t) {
          const int i = ck.t0 + t;
          double adv = advantages[ck.env][i];
          if (cfg.normalize_advantage) adv = (adv - adv_mean) / (adv_std + 1e-8);
          const VectorXd mu = pk.y[t].col(bi);
          const double lp_new = SquashedGaussian::log_prob(env.pre_action[i], mu, log_std);
          const double lp_old = env.log_prob[i];
          const double ratio = std::exp(lp_new - lp_old);
          const double unclipped = ratio * adv;
          const double clipped =
              std::clamp(ratio, 1.0 - cfg.clip_ratio, 1.0 + cfg.clip_ratio) * adv;
          loss_p += -std::min(unclipped, clipped);
          kl += lp_old - lp_new;

          if (unclipped <= clipped) {
            VectorXd dmu, dls;
            SquashedGaussian::grads(env.pre_action[i], mu, log_std, dmu, dls);
            const double dl_dlp = -adv * ratio / N;
            dy_p[t].col(bi) = dl_dlp * dmu;
            dlogstd_acc += dl_dlp * dls;
          }

          const double v = vk.y[t](0, bi);
          const double ret = returns[ck.env][i];
          loss_v += 0.5 * (v - ret) * (v - ret);
          dy_v[t](0, bi) = (v - ret) / N;
        }
      }
      loss_p /= N;
      loss_v /= N;
      kl /= N;
      if (!std::isfinite(loss_p) || !std::isfinite(loss_v))
        throw std::runtime_error("ppo_update: NaN loss (policy=" + std::to_string(loss_p) +
                                 ", value=" + std::to_string(loss_v) + ")");

      stats.kl = kl;
      if (kl > cfg.d_kl) {
        stats.early_stopped = true;
        break;
      }

      policy.zero_grad();
      value_net.zero_grad();
      policy.net.backward(pk, dy_p);
      policy.g_log_std.col(0) = dlogstd_acc;
      value_net.backward(vk, dy_v);
      policy_opt.step(policy.params(), lr_policy);
      value_opt.step(value_net.params(), lr_value);
      ++stats.updates_done;
      loss_p_acc += loss_p;
      loss_v_acc += loss_v;
      ++loss_count;

      start = end;
    }
  }
  if (loss_count > 0) {
    stats.policy_loss = loss_p_acc / loss_count;
    stats.value_loss = loss_v_acc / loss_count;
  }
  return stats;
}

}  // namespace rhinf
