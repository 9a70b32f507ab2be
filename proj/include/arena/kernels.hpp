#pragma once

#include <cmath>
#include <cstddef>
#include <string>

namespace arena::kernels {

// Dense-layer inner loops. Scalar templates are the reference
// implementations; the float overloads dispatch to an AVX2+FMA variant at
// runtime when the CPU supports it (override with ARENA_KERNELS=scalar|avx2
// or force_isa()). Scalar and SIMD paths accumulate in different orders, so
// they agree to rounding, not bit-exactly; the equivalence tests pin the
// tolerance.

enum class Isa { Scalar, Avx2 };

Isa active_isa();
void force_isa(Isa isa);   // test hook; ignores CPU support for Scalar only
bool avx2_supported();
std::string isa_name(Isa isa);

// Weight layout is input-major: w[i * out + j] connects input i to output j.

// y[j] = bias[j] + sum_i x[i] * w[i*out + j]   (bias may be null -> 0)
template <typename T>
void matvec(const T* w, const T* x, const T* bias, T* y, int in, int out) {
  for (int j = 0; j < out; ++j) y[j] = bias ? bias[j] : T(0);
  for (int i = 0; i < in; ++i) {
    T xi = x[i];
    const T* row = w + static_cast<size_t>(i) * out;
    for (int j = 0; j < out; ++j) y[j] += xi * row[j];
  }
}

// gx[i] = sum_j w[i*out + j] * gy[j]   (gradient w.r.t. the layer input)
template <typename T>
void matvec_t(const T* w, const T* gy, T* gx, int in, int out) {
  for (int i = 0; i < in; ++i) {
    const T* row = w + static_cast<size_t>(i) * out;
    T acc = T(0);
    for (int j = 0; j < out; ++j) acc += row[j] * gy[j];
    gx[i] = acc;
  }
}

// gw[i*out + j] += x[i] * gy[j]   (weight-gradient accumulation)
template <typename T>
void outer_accum(const T* x, const T* gy, T* gw, int in, int out) {
  for (int i = 0; i < in; ++i) {
    T xi = x[i];
    T* row = gw + static_cast<size_t>(i) * out;
    for (int j = 0; j < out; ++j) row[j] += xi * gy[j];
  }
}

template <typename T>
void axpy(T a, const T* x, T* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename T>
T dot(const T* x, const T* y, int n) {
  T acc = T(0);
  for (int i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

template <typename T>
void scale(T a, T* x, int n) {
  for (int i = 0; i < n; ++i) x[i] *= a;
}

// One Adam step over a flat tensor. m, v are the moment buffers; lr is the
// base rate and t the 1-based step index used for bias correction.
template <typename T>
void adam_update(T* param, const T* grad, T* m, T* v, int n, T lr, T beta1,
                 T beta2, T eps, long t) {
  T c1 = T(1) - std::pow(beta1, T(t));
  T c2 = T(1) - std::pow(beta2, T(t));
  for (int i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (T(1) - beta1) * grad[i];
    v[i] = beta2 * v[i] + (T(1) - beta2) * grad[i] * grad[i];
    T mhat = m[i] / c1;
    T vhat = v[i] / c2;
    param[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

// Dispatched float overloads.
void matvec(const float* w, const float* x, const float* bias, float* y,
            int in, int out);
void matvec_t(const float* w, const float* gy, float* gx, int in, int out);
void outer_accum(const float* x, const float* gy, float* gw, int in, int out);
void axpy(float a, const float* x, float* y, int n);
float dot(const float* x, const float* y, int n);
void scale(float a, float* x, int n);
void adam_update(float* param, const float* grad, float* m, float* v, int n,
                 float lr, float beta1, float beta2, float eps, long t);

}  // namespace arena::kernels
