#include "arena/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace arena::kernels {

#if defined(__x86_64__) || defined(_M_X64)
#define ARENA_HAVE_AVX2_TU 1
#else
#define ARENA_HAVE_AVX2_TU 0
#endif

#if ARENA_HAVE_AVX2_TU
namespace avx2 {
void matvec(const float* w, const float* x, const float* bias, float* y,
            int in, int out);
void matvec_t(const float* w, const float* gy, float* gx, int in, int out);
void outer_accum(const float* x, const float* gy, float* gw, int in, int out);
void axpy(float a, const float* x, float* y, int n);
float dot(const float* x, const float* y, int n);
void scale(float a, float* x, int n);
void adam_update(float* param, const float* grad, float* m, float* v, int n,
                 float lr, float beta1, float beta2, float eps, long t);
}  // namespace avx2
#endif

bool avx2_supported() {
#if ARENA_HAVE_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa detect_isa() {
  if (const char* env = std::getenv("ARENA_KERNELS")) {
    std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2") {
      if (!avx2_supported())
        throw std::runtime_error("ARENA_KERNELS=avx2 but CPU lacks AVX2+FMA");
      return Isa::Avx2;
    }
  }
  return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

Isa g_isa = detect_isa();

}  // namespace

Isa active_isa() { return g_isa; }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported())
    throw std::runtime_error("AVX2+FMA not supported on this CPU");
  g_isa = isa;
}

std::string isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void matvec(const float* w, const float* x, const float* bias, float* y,
            int in, int out) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::matvec(w, x, bias, y, in, out);
#endif
  matvec<float>(w, x, bias, y, in, out);
}

void matvec_t(const float* w, const float* gy, float* gx, int in, int out) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::matvec_t(w, gy, gx, in, out);
#endif
  matvec_t<float>(w, gy, gx, in, out);
}

void outer_accum(const float* x, const float* gy, float* gw, int in,
                 int out) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::outer_accum(x, gy, gw, in, out);
#endif
  outer_accum<float>(x, gy, gw, in, out);
}

void axpy(float a, const float* x, float* y, int n) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::axpy(a, x, y, n);
#endif
  axpy<float>(a, x, y, n);
}

float dot(const float* x, const float* y, int n) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::dot(x, y, n);
#endif
  return dot<float>(x, y, n);
}

void scale(float a, float* x, int n) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2) return avx2::scale(a, x, n);
#endif
  scale<float>(a, x, n);
}

void adam_update(float* param, const float* grad, float* m, float* v, int n,
                 float lr, float beta1, float beta2, float eps, long t) {
#if ARENA_HAVE_AVX2_TU
  if (g_isa == Isa::Avx2)
    return avx2::adam_update(param, grad, m, v, n, lr, beta1, beta2, eps, t);
#endif
  adam_update<float>(param, grad, m, v, n, lr, beta1, beta2, eps, t);
}

}  // namespace arena::kernels
