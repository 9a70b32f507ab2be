#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "arena/net.hpp"

namespace arena {

class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PPOConfig {
  float learning_rate = 3e-4f;
  float gamma = 0.99f;
  float gae_lambda = 0.95f;
  float clip_range = 0.2f;
  int batch_size = 64;
  int rollout_length = 2048;
  int epochs_per_update = 10;
  float value_coef = 0.5f;
  float entropy_coef = 0.0f;
  float max_grad_norm = 0.5f;
  float adam_beta1 = 0.9f;
  float adam_beta2 = 0.999f;
  float adam_eps = 1e-8f;
};

// Softmax over the valid indices only; zero probability elsewhere.
template <typename T>
std::vector<T> masked_distribution(const std::vector<T>& logits,
                                   const std::vector<ActionIndex>& valid) {
  if (valid.empty())
    throw ContractError("masked_distribution: empty valid set");
  T max_logit = logits[valid[0]];
  for (ActionIndex a : valid) max_logit = std::max(max_logit, logits[a]);
  std::vector<T> probs(logits.size(), T(0));
  T total = T(0);
  for (ActionIndex a : valid) {
    T e = std::exp(logits[a] - max_logit);
    probs[a] = e;
    total += e;
  }
  for (ActionIndex a : valid) probs[a] /= total;
  return probs;
}

// Log-probability of `action` under the masked softmax, computed in
// log-space so saturated logits cannot underflow to log(0).
template <typename T>
T masked_log_prob(const std::vector<T>& logits,
                  const std::vector<ActionIndex>& valid, ActionIndex action) {
  if (valid.empty()) throw ContractError("masked_log_prob: empty valid set");
  T max_logit = logits[valid[0]];
  for (ActionIndex a : valid) max_logit = std::max(max_logit, logits[a]);
  T total = T(0);
  for (ActionIndex a : valid) total += std::exp(logits[a] - max_logit);
  return logits[action] - max_logit - std::log(total);
}

// min(ratio * A, clip(ratio, 1-eps, 1+eps) * A); ties resolve to the
// unclipped branch.
template <typename T>
T clipped_objective(T ratio, T advantage, T clip_range) {
  T clipped =
      std::clamp(ratio, T(1) - clip_range, T(1) + clip_range) * advantage;
  return std::min(ratio * advantage, clipped);
}

// GAE over a trajectory segment. dones[t] marks transitions that ended an
// episode; bootstrap_value is V of the state after the final transition and
// is only used when the segment ends mid-episode.
template <typename T>
void compute_gae(const std::vector<T>& rewards, const std::vector<T>& values,
                 const std::vector<uint8_t>& dones, T gamma, T lambda,
                 T bootstrap_value, std::vector<T>& advantages,
                 std::vector<T>& returns) {
  size_t n = rewards.size();
  if (values.size() != n || dones.size() != n)
    throw ContractError("compute_gae: input length mismatch");
  advantages.assign(n, T(0));
  returns.assign(n, T(0));
  T next_adv = T(0);
  for (size_t t = n; t-- > 0;) {
    T not_done = dones[t] ? T(0) : T(1);
    T next_value = (t + 1 < n) ? values[t + 1] : bootstrap_value;
    T delta = rewards[t] + gamma * next_value * not_done - values[t];
    next_adv = delta + gamma * lambda * not_done * next_adv;
    advantages[t] = next_adv;
    returns[t] = advantages[t] + values[t];
  }
}

template <typename T>
struct RolloutBuffer {
  int obs_dim = 0;
  int n_actions = 0;
  int capacity = 0;
  int size = 0;

  std::vector<T> observations;      // size * obs_dim
  std::vector<ActionIndex> actions;
  std::vector<T> logprobs;
  std::vector<T> rewards;
  std::vector<T> values;
  std::vector<uint8_t> dones;
  std::vector<uint8_t> valid_masks;  // size * n_actions; PPO recomputes the
                                     // masked distribution with these
  std::vector<T> advantages, returns;
  T bootstrap_value = T(0);

  void init(int obs, int actions_dim, int cap) {
    obs_dim = obs;
    n_actions = actions_dim;
    capacity = cap;
    observations.assign(static_cast<size_t>(cap) * obs, T(0));
    actions.assign(cap, 0);
    logprobs.assign(cap, T(0));
    rewards.assign(cap, T(0));
    values.assign(cap, T(0));
    dones.assign(cap, 0);
    valid_masks.assign(static_cast<size_t>(cap) * actions_dim, 0);
    size = 0;
  }

  bool full() const { return size == capacity; }
  void clear() { size = 0; }

  void push(const T* obs, ActionIndex action, T logprob, T reward, T value,
            bool done, const std::vector<ActionIndex>& valid) {
    if (full()) throw ContractError("RolloutBuffer overflow");
    std::copy(obs, obs + obs_dim,
              observations.begin() + static_cast<size_t>(size) * obs_dim);
    actions[size] = action;
    logprobs[size] = logprob;
    rewards[size] = reward;
    values[size] = value;
    dones[size] = done ? 1 : 0;
    uint8_t* mask = valid_masks.data() + static_cast<size_t>(size) * n_actions;
    std::fill(mask, mask + n_actions, 0);
    for (ActionIndex a : valid) mask[a] = 1;
    ++size;
  }

  void finish(T gamma, T lambda) {
    std::vector<T> r(rewards.begin(), rewards.begin() + size);
    std::vector<T> v(values.begin(), values.begin() + size);
    std::vector<uint8_t> d(dones.begin(), dones.begin() + size);
    compute_gae(r, v, d, gamma, lambda, bootstrap_value, advantages, returns);
  }

  std::vector<ActionIndex> valid_of(int idx) const {
    std::vector<ActionIndex> valid;
    const uint8_t* mask = valid_masks.data() + static_cast<size_t>(idx) * n_actions;
    for (int a = 0; a < n_actions; ++a)
      if (mask[a]) valid.push_back(a);
    return valid;
  }
};

template <typename T>
struct AdamState {
  std::vector<T> m, v;
  long t = 0;

  void init(size_t n) {
    m.assign(n, T(0));
    v.assign(n, T(0));
    t = 0;
  }
};

template <typename T>
struct PPOStats {
  T loss = T(0);
  T policy_loss = T(0);
  T value_loss = T(0);
  T entropy = T(0);
};

// Mean loss over the index set and accumulated gradients of the minimized
// loss  -clip_obj + value_coef * (V - R)^2 - entropy_coef * H.
template <typename T>
PPOStats<T> ppo_loss_and_grads(const PolicyNet<T>& net,
                               const RolloutBuffer<T>& buf,
                               const std::vector<int>& indices,
                               const std::vector<T>& norm_advantages,
                               const PPOConfig& cfg,
                               NetGrads<T>* grads = nullptr) {
  PPOStats<T> stats;
  NetActivations<T> act;
  NetOutput<T> out;
  std::vector<T> dlogits;
  T inv_n = T(1) / static_cast<T>(indices.size());
  T clip = static_cast<T>(cfg.clip_range);

  for (int idx : indices) {
    const T* obs = buf.observations.data() + static_cast<size_t>(idx) * buf.obs_dim;
    net_forward(net, obs, out, act);
    std::vector<ActionIndex> valid = buf.valid_of(idx);
    std::vector<T> probs = masked_distribution(out.logits, valid);

    ActionIndex a = buf.actions[idx];
    T logp_new = masked_log_prob(out.logits, valid, a);
    // Clamp far outside the trust region: a no-op for any ratio the clip
    // cares about, but it keeps exp() finite when the policy has drifted
    // many nats from a stored exploration action.
    T log_ratio = std::clamp(logp_new - buf.logprobs[idx], T(-30), T(30));
    T ratio = std::exp(log_ratio);
    T adv = norm_advantages[idx];

    T unclipped = ratio * adv;
    T clipped = std::clamp(ratio, T(1) - clip, T(1) + clip) * adv;
    T objective = std::min(unclipped, clipped);

    T entropy = T(0);
    for (ActionIndex va : valid)
      if (probs[va] > T(0)) entropy -= probs[va] * std::log(probs[va]);

    T verr = out.value - buf.returns[idx];

    stats.policy_loss += -objective * inv_n;
    stats.value_loss += verr * verr * inv_n;
    stats.entropy += entropy * inv_n;

    if (grads) {
      // d(-objective)/dratio: gradient flows through the selected branch of
      // the min; the clipped branch is flat outside the trust region.
      T dobj_dratio;
      if (unclipped <= clipped)
        dobj_dratio = adv;
      else
        dobj_dratio = (ratio > T(1) - clip && ratio < T(1) + clip) ? adv : T(0);
      T dloss_dlogp = -dobj_dratio * ratio * inv_n;

      dlogits.assign(net.n_actions, T(0));
      for (ActionIndex va : valid) {
        T indicator = va == a ? T(1) : T(0);
        dlogits[va] += dloss_dlogp * (indicator - probs[va]);
        // entropy term: dH/dlogit_j = -p_j (log p_j + H), which tends to 0
        // as p_j -> 0; skip underflowed probabilities so log(0) cannot
        // poison the gradient.
        if (probs[va] > T(0))
          dlogits[va] += static_cast<T>(cfg.entropy_coef) * inv_n * probs[va] *
                         (std::log(probs[va]) + entropy);
      }
      T dvalue = static_cast<T>(cfg.value_coef) * T(2) * verr * inv_n;
      net_backward(net, obs, act, dlogits.data(), dvalue, *grads);
    }
  }
  stats.loss = stats.policy_loss +
               static_cast<T>(cfg.value_coef) * stats.value_loss -
               static_cast<T>(cfg.entropy_coef) * stats.entropy;
  return stats;
}

// Global L2 norm of the gradients.
template <typename T>
T grad_norm(NetGrads<T>& grads) {
  T sq = T(0);
  grads.g.for_each_tensor([&sq](const char*, std::vector<T>& t) {
    for (T x : t) sq += x * x;
  });
  return std::sqrt(sq);
}

template <typename T>
void clip_grad_norm(NetGrads<T>& grads, T max_norm) {
  T norm = grad_norm(grads);
  if (norm > max_norm && norm > T(0)) {
    T s = max_norm / norm;
    grads.g.for_each_tensor([s](const char*, std::vector<T>& t) {
      for (T& x : t) x *= s;
    });
  }
}

template <typename T>
void adam_step(PolicyNet<T>& net, NetGrads<T>& grads, AdamState<T>& adam,
               const PPOConfig& cfg) {
  if (adam.m.empty()) adam.init(net.param_count());
  ++adam.t;
  std::vector<std::vector<T>*> params, gs;
  net.for_each_tensor(
      [&params](const char*, std::vector<T>& t) { params.push_back(&t); });
  grads.g.for_each_tensor(
      [&gs](const char*, std::vector<T>& t) { gs.push_back(&t); });
  size_t offset = 0;
  for (size_t k = 0; k < params.size(); ++k) {
    kernels::adam_update(params[k]->data(), gs[k]->data(),
                         adam.m.data() + offset, adam.v.data() + offset,
                         static_cast<int>(params[k]->size()),
                         static_cast<T>(cfg.learning_rate),
                         static_cast<T>(cfg.adam_beta1),
                         static_cast<T>(cfg.adam_beta2),
                         static_cast<T>(cfg.adam_eps), adam.t);
    offset += params[k]->size();
  }
}

// One PPO update over a full buffer: advantages normalized once per update,
// then epochs_per_update passes of shuffled minibatches.
template <typename T>
PPOStats<T> ppo_update(PolicyNet<T>& net, AdamState<T>& adam,
                       RolloutBuffer<T>& buf, const PPOConfig& cfg,
                       SplitMix64& rng) {
  buf.finish(static_cast<T>(cfg.gamma), static_cast<T>(cfg.gae_lambda));

  std::vector<T> norm_adv(buf.advantages.begin(), buf.advantages.end());
  T mean = std::accumulate(norm_adv.begin(), norm_adv.end(), T(0)) /
           static_cast<T>(norm_adv.size());
  T var = T(0);
  for (T a : norm_adv) var += (a - mean) * (a - mean);
  var /= static_cast<T>(norm_adv.size());
  T inv_std = T(1) / (std::sqrt(var) + T(1e-8));
  for (T& a : norm_adv) a = (a - mean) * inv_std;

  NetGrads<T> grads;
  grads.init_shapes(net);

  std::vector<int> order(buf.size);
  std::iota(order.begin(), order.end(), 0);

  PPOStats<T> avg;
  int n_batches = 0;
  for (int epoch = 0; epoch < cfg.epochs_per_update; ++epoch) {
    // Fisher-Yates with the deterministic PRNG.
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.next_below(i)]);
    for (int start = 0; start < buf.size; start += cfg.batch_size) {
      int end = std::min(start + cfg.batch_size, buf.size);
      std::vector<int> batch(order.begin() + start, order.begin() + end);
      grads.zero();
      PPOStats<T> stats =
          ppo_loss_and_grads(net, buf, batch, norm_adv, cfg, &grads);
      if (!std::isfinite(stats.loss))
        throw NumericsError("ppo_update: non-finite loss; update aborted");
      clip_grad_norm(grads, static_cast<T>(cfg.max_grad_norm));
      adam_step(net, grads, adam, cfg);
      avg.loss += stats.loss;
      avg.policy_loss += stats.policy_loss;
      avg.value_loss += stats.value_loss;
      avg.entropy += stats.entropy;
      ++n_batches;
    }
  }
  if (n_batches > 0) {
    avg.loss /= n_batches;
    avg.policy_loss /= n_batches;
    avg.value_loss /= n_batches;
    avg.entropy /= n_batches;
  }
  return avg;
}

}  // namespace arena
