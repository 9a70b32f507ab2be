// AVX2+FMA variants of the dense-layer kernels. This translation unit is the
// only one compiled with -mavx2 -mfma; callers reach it through the runtime
// dispatch in kernels.cpp, so the binary stays runnable on non-AVX2 hosts.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace arena::kernels::avx2 {

namespace {

inline float hsum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_add_ps(lo, _mm_movehl_ps(lo, lo));
  lo = _mm_add_ss(lo, _mm_shuffle_ps(lo, lo, 1));
  return _mm_cvtss_f32(lo);
}

}  // namespace

void matvec(const float* w, const float* x, const float* bias, float* y,
            int in, int out) {
  int j = 0;
  for (; j + 8 <= out; j += 8)
    _mm256_storeu_ps(y + j, bias ? _mm256_loadu_ps(bias + j)
                                 : _mm256_setzero_ps());
  for (; j < out; ++j) y[j] = bias ? bias[j] : 0.0f;

  for (int i = 0; i < in; ++i) {
    const float* row = w + static_cast<size_t>(i) * out;
    __m256 xi = _mm256_set1_ps(x[i]);
    int k = 0;
    for (; k + 8 <= out; k += 8) {
      __m256 acc = _mm256_loadu_ps(y + k);
      acc = _mm256_fmadd_ps(xi, _mm256_loadu_ps(row + k), acc);
      _mm256_storeu_ps(y + k, acc);
    }
    for (; k < out; ++k) y[k] += x[i] * row[k];
  }
}

void matvec_t(const float* w, const float* gy, float* gx, int in, int out) {
  for (int i = 0; i < in; ++i) {
    const float* row = w + static_cast<size_t>(i) * out;
    __m256 acc = _mm256_setzero_ps();
    int j = 0;
    for (; j + 8 <= out; j += 8)
      acc = _mm256_fmadd_ps(_mm256_loadu_ps(row + j), _mm256_loadu_ps(gy + j),
                            acc);
    float s = hsum(acc);
    for (; j < out; ++j) s += row[j] * gy[j];
    gx[i] = s;
  }
}

void outer_accum(const float* x, const float* gy, float* gw, int in,
                 int out) {
  for (int i = 0; i < in; ++i) {
    float* row = gw + static_cast<size_t>(i) * out;
    __m256 xi = _mm256_set1_ps(x[i]);
    int j = 0;
    for (; j + 8 <= out; j += 8) {
      __m256 acc = _mm256_loadu_ps(row + j);
      acc = _mm256_fmadd_ps(xi, _mm256_loadu_ps(gy + j), acc);
      _mm256_storeu_ps(row + j, acc);
    }
    for (; j < out; ++j) row[j] += x[i] * gy[j];
  }
}

void axpy(float a, const float* x, float* y, int n) {
  __m256 av = _mm256_set1_ps(a);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_loadu_ps(y + i);
    acc = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), acc);
    _mm256_storeu_ps(y + i, acc);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

float dot(const float* x, const float* y, int n) {
  __m256 acc = _mm256_setzero_ps();
  int i = 0;
  for (; i + 8 <= n; i += 8)
    acc = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), acc);
  float s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void scale(float a, float* x, int n) {
  __m256 av = _mm256_set1_ps(a);
  int i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(x + i, _mm256_mul_ps(av, _mm256_loadu_ps(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void adam_update(float* param, const float* grad, float* m, float* v, int n,
                 float lr, float beta1, float beta2, float eps, long t) {
  float c1 = 1.0f - std::pow(beta1, static_cast<float>(t));
  float c2 = 1.0f - std::pow(beta2, static_cast<float>(t));
  __m256 b1 = _mm256_set1_ps(beta1);
  __m256 b2 = _mm256_set1_ps(beta2);
  __m256 ob1 = _mm256_set1_ps(1.0f - beta1);
  __m256 ob2 = _mm256_set1_ps(1.0f - beta2);
  __m256 rc1 = _mm256_set1_ps(1.0f / c1);
  __m256 rc2 = _mm256_set1_ps(1.0f / c2);
  __m256 lrv = _mm256_set1_ps(lr);
  __m256 epsv = _mm256_set1_ps(eps);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 g = _mm256_loadu_ps(grad + i);
    __m256 mi = _mm256_fmadd_ps(ob1, g, _mm256_mul_ps(b1, _mm256_loadu_ps(m + i)));
    __m256 vi = _mm256_fmadd_ps(ob2, _mm256_mul_ps(g, g),
                                _mm256_mul_ps(b2, _mm256_loadu_ps(v + i)));
    _mm256_storeu_ps(m + i, mi);
    _mm256_storeu_ps(v + i, vi);
    __m256 mhat = _mm256_mul_ps(mi, rc1);
    __m256 vhat = _mm256_mul_ps(vi, rc2);
    __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), epsv);
    __m256 p = _mm256_loadu_ps(param + i);
    p = _mm256_sub_ps(p, _mm256_div_ps(_mm256_mul_ps(lrv, mhat), denom));
    _mm256_storeu_ps(param + i, p);
  }
  for (; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0f - beta1) * grad[i];
    v[i] = beta2 * v[i] + (1.0f - beta2) * grad[i] * grad[i];
    float mhat = m[i] / c1;
    float vhat = v[i] / c2;
    param[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace arena::kernels::avx2

#endif  // x86_64
