#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "arena/env.hpp"
#include "arena/kernels.hpp"
#include "arena/rng.hpp"

namespace arena {

// Policy/value network: shared trunk of two 64-unit tanh layers feeding a
// logits head and a scalar value head. Templated on the scalar type so tests
// can run the identical arithmetic in double for finite-difference checks;
// training and checkpoints use float.

inline constexpr int kHiddenSize = 64;

template <typename T>
struct Dense {
  int in = 0, out = 0;
  std::vector<T> w;  // input-major: w[i * out + j]
  std::vector<T> b;

  void resize(int in_dim, int out_dim) {
    in = in_dim;
    out = out_dim;
    w.assign(static_cast<size_t>(in) * out, T(0));
    b.assign(out, T(0));
  }
};

template <typename T>
struct PolicyNet {
  int obs_dim = 0;
  int n_actions = 0;
  Dense<T> fc1, fc2, policy, value;

  void init_shapes(int obs, int actions) {
    obs_dim = obs;
    n_actions = actions;
    fc1.resize(obs, kHiddenSize);
    fc2.resize(kHiddenSize, kHiddenSize);
    policy.resize(kHiddenSize, actions);
    value.resize(kHiddenSize, 1);
  }

  // Xavier-uniform weights, zero biases.
  void init_params(SplitMix64& rng) {
    auto fill = [&rng](Dense<T>& d) {
      T limit = std::sqrt(T(6) / T(d.in + d.out));
      for (T& x : d.w)
        x = static_cast<T>((rng.next_double() * 2.0 - 1.0)) * limit;
      for (T& x : d.b) x = T(0);
    };
    fill(fc1);
    fill(fc2);
    fill(policy);
    fill(value);
  }

  size_t param_count() const {
    return fc1.w.size() + fc1.b.size() + fc2.w.size() + fc2.b.size() +
           policy.w.size() + policy.b.size() + value.w.size() + value.b.size();
  }

  template <typename Fn>
  void for_each_tensor(Fn&& fn) {
    fn("fc1.w", fc1.w);
    fn("fc1.b", fc1.b);
    fn("fc2.w", fc2.w);
    fn("fc2.b", fc2.b);
    fn("policy.w", policy.w);
    fn("policy.b", policy.b);
    fn("value.w", value.w);
    fn("value.b", value.b);
  }

  template <typename Fn>
  void for_each_tensor(Fn&& fn) const {
    fn("fc1.w", fc1.w);
    fn("fc1.b", fc1.b);
    fn("fc2.w", fc2.w);
    fn("fc2.b", fc2.b);
    fn("policy.w", policy.w);
    fn("policy.b", policy.b);
    fn("value.w", value.w);
    fn("value.b", value.b);
  }
};

// Post-activation hidden states kept for the backward pass.
template <typename T>
struct NetActivations {
  std::vector<T> h1, h2;
};

template <typename T>
struct NetOutput {
  std::vector<T> logits;
  T value = T(0);
};

template <typename T>
void net_forward(const PolicyNet<T>& net, const T* obs, NetOutput<T>& out,
                 NetActivations<T>& act) {
  act.h1.resize(kHiddenSize);
  act.h2.resize(kHiddenSize);
  out.logits.resize(net.n_actions);
  kernels::matvec(net.fc1.w.data(), obs, net.fc1.b.data(), act.h1.data(),
                  net.obs_dim, kHiddenSize);
  for (T& x : act.h1) x = std::tanh(x);
  kernels::matvec(net.fc2.w.data(), act.h1.data(), net.fc2.b.data(),
                  act.h2.data(), kHiddenSize, kHiddenSize);
  for (T& x : act.h2) x = std::tanh(x);
  kernels::matvec(net.policy.w.data(), act.h2.data(), net.policy.b.data(),
                  out.logits.data(), kHiddenSize, net.n_actions);
  T v;
  kernels::matvec(net.value.w.data(), act.h2.data(), net.value.b.data(), &v,
                  kHiddenSize, 1);
  out.value = v;
}

// Convenience overload for Observation (float) fed into a float net.
inline void net_forward(const PolicyNet<float>& net, const Observation& obs,
                        NetOutput<float>& out, NetActivations<float>& act) {
  if (static_cast<int>(obs.size()) != net.obs_dim)
    throw ContractError("observation length does not match network input");
  net_forward<float>(net, obs.data(), out, act);
}

// Gradients, same shapes as the parameters.
template <typename T>
struct NetGrads {
  PolicyNet<T> g;

  void init_shapes(const PolicyNet<T>& net) {
    g.init_shapes(net.obs_dim, net.n_actions);
  }
  void zero() {
    g.for_each_tensor([](const char*, std::vector<T>& t) {
      std::fill(t.begin(), t.end(), T(0));
    });
  }
};

// Accumulates parameter gradients for one sample given the gradients w.r.t.
// the logits and the value output.
template <typename T>
void net_backward(const PolicyNet<T>& net, const T* obs,
                  const NetActivations<T>& act, const T* dlogits, T dvalue,
                  NetGrads<T>& grads) {
  std::vector<T> dh2(kHiddenSize, T(0));
  std::vector<T> dh1(kHiddenSize, T(0));

  // Heads.
  kernels::outer_accum(act.h2.data(), dlogits, grads.g.policy.w.data(),
                       kHiddenSize, net.n_actions);
  kernels::axpy(T(1), dlogits, grads.g.policy.b.data(), net.n_actions);
  kernels::matvec_t(net.policy.w.data(), dlogits, dh2.data(), kHiddenSize,
                    net.n_actions);
  kernels::axpy(dvalue, act.h2.data(), grads.g.value.w.data(), kHiddenSize);
  grads.g.value.b[0] += dvalue;
  kernels::axpy(dvalue, net.value.w.data(), dh2.data(), kHiddenSize);

  // Trunk layer 2.
  for (int j = 0; j < kHiddenSize; ++j)
    dh2[j] *= (T(1) - act.h2[j] * act.h2[j]);
  kernels::outer_accum(act.h1.data(), dh2.data(), grads.g.fc2.w.data(),
                       kHiddenSize, kHiddenSize);
  kernels::axpy(T(1), dh2.data(), grads.g.fc2.b.data(), kHiddenSize);
  kernels::matvec_t(net.fc2.w.data(), dh2.data(), dh1.data(), kHiddenSize,
                    kHiddenSize);

  // Trunk layer 1.
  for (int j = 0; j < kHiddenSize; ++j)
    dh1[j] *= (T(1) - act.h1[j] * act.h1[j]);
  kernels::outer_accum(obs, dh1.data(), grads.g.fc1.w.data(), net.obs_dim,
                       kHiddenSize);
  kernels::axpy(T(1), dh1.data(), grads.g.fc1.b.data(), kHiddenSize);
}

}  // namespace arena
