#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "arena/kernels.hpp"
#include "arena/rng.hpp"

using namespace arena;
namespace k = arena::kernels;

namespace {

std::vector<float> random_vec(SplitMix64& rng, int n, float scale = 1.0f) {
  std::vector<float> v(n);
  for (float& x : v)
    x = static_cast<float>(rng.next_double() * 2.0 - 1.0) * scale;
  return v;
}

bool close(const std::vector<float>& a, const std::vector<float>& b,
           float tol = 1e-5f) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    float denom = std::max({std::abs(a[i]), std::abs(b[i]), 1.0f});
    if (std::abs(a[i] - b[i]) / denom > tol) return false;
  }
  return true;
}

const std::vector<std::pair<int, int>> kShapes = {
    {1, 1}, {3, 7}, {8, 8}, {9, 15}, {2, 64}, {64, 64}, {64, 25}, {41, 64},
    {64, 1}, {17, 100}};

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  if (!k::avx2_supported()) {
    MESSAGE("AVX2 not supported on this host; dispatch test skipped");
    return;
  }
  SplitMix64 rng(42);
  for (auto [in, out] : kShapes) {
    std::vector<float> w = random_vec(rng, in * out);
    std::vector<float> x = random_vec(rng, in);
    std::vector<float> b = random_vec(rng, out);
    std::vector<float> gy = random_vec(rng, out);

    std::vector<float> y_scalar(out), y_avx(out);
    std::vector<float> gx_scalar(in), gx_avx(in);
    std::vector<float> gw_scalar = random_vec(rng, in * out);
    std::vector<float> gw_avx = gw_scalar;

    k::force_isa(k::Isa::Scalar);
    k::matvec(w.data(), x.data(), b.data(), y_scalar.data(), in, out);
    k::matvec_t(w.data(), gy.data(), gx_scalar.data(), in, out);
    k::outer_accum(x.data(), gy.data(), gw_scalar.data(), in, out);
    float dot_scalar = k::dot(x.data(), x.data(), in);

    k::force_isa(k::Isa::Avx2);
    k::matvec(w.data(), x.data(), b.data(), y_avx.data(), in, out);
    k::matvec_t(w.data(), gy.data(), gx_avx.data(), in, out);
    k::outer_accum(x.data(), gy.data(), gw_avx.data(), in, out);
    float dot_avx = k::dot(x.data(), x.data(), in);

    CAPTURE(in);
    CAPTURE(out);
    CHECK(close(y_scalar, y_avx));
    CHECK(close(gx_scalar, gx_avx));
    CHECK(close(gw_scalar, gw_avx));
    CHECK(std::abs(dot_scalar - dot_avx) /
              std::max(1.0f, std::abs(dot_scalar)) <
          1e-5f);
  }
  k::force_isa(k::avx2_supported() ? k::Isa::Avx2 : k::Isa::Scalar);
}

TEST_CASE("axpy and scale agree across isas") {
  if (!k::avx2_supported()) return;
  SplitMix64 rng(7);
  for (int n : {1, 7, 8, 13, 64, 129}) {
    std::vector<float> x = random_vec(rng, n);
    std::vector<float> y0 = random_vec(rng, n);
    std::vector<float> y1 = y0;
    k::force_isa(k::Isa::Scalar);
    k::axpy(0.37f, x.data(), y0.data(), n);
    k::scale(1.1f, y0.data(), n);
    k::force_isa(k::Isa::Avx2);
    k::axpy(0.37f, x.data(), y1.data(), n);
    k::scale(1.1f, y1.data(), n);
    CHECK(close(y0, y1, 1e-6f));
  }
  k::force_isa(k::Isa::Avx2);
}

TEST_CASE("adam update agrees across isas and matches the double reference") {
  SplitMix64 rng(11);
  int n = 37;
  std::vector<float> p0 = random_vec(rng, n);
  std::vector<float> g = random_vec(rng, n);
  std::vector<float> m0(n, 0.0f), v0(n, 0.0f);
  std::vector<float> p1 = p0, m1 = m0, v1 = v0;

  // Double-precision reference via the scalar template.
  std::vector<double> pd(p0.begin(), p0.end());
  std::vector<double> gd(g.begin(), g.end());
  std::vector<double> md(n, 0.0), vd(n, 0.0);

  for (long t = 1; t <= 3; ++t) {
    k::force_isa(k::Isa::Scalar);
    k::adam_update(p0.data(), g.data(), m0.data(), v0.data(), n, 1e-3f, 0.9f,
                   0.999f, 1e-8f, t);
    if (k::avx2_supported()) {
      k::force_isa(k::Isa::Avx2);
      k::adam_update(p1.data(), g.data(), m1.data(), v1.data(), n, 1e-3f, 0.9f,
                     0.999f, 1e-8f, t);
    }
    k::adam_update<double>(pd.data(), gd.data(), md.data(), vd.data(), n, 1e-3,
                           0.9, 0.999, 1e-8, t);
  }
  if (k::avx2_supported()) CHECK(close(p0, p1, 1e-5f));
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(p0[i] - static_cast<float>(pd[i])) < 1e-5f);
  k::force_isa(k::avx2_supported() ? k::Isa::Avx2 : k::Isa::Scalar);
}

TEST_CASE("matvec matches a hand example") {
  // 2x3, w[i*out+j]: y = b + x W
  std::vector<float> w = {1, 2, 3, 4, 5, 6};
  std::vector<float> x = {2, -1};
  std::vector<float> b = {0.5f, 0, -0.5f};
  std::vector<float> y(3);
  k::matvec(w.data(), x.data(), b.data(), y.data(), 2, 3);
  CHECK(y[0] == doctest::Approx(2 * 1 - 1 * 4 + 0.5));
  CHECK(y[1] == doctest::Approx(2 * 2 - 1 * 5));
  CHECK(y[2] == doctest::Approx(2 * 3 - 1 * 6 - 0.5));

  std::vector<float> gy = {1, 0, -1};
  std::vector<float> gx(2);
  k::matvec_t(w.data(), gy.data(), gx.data(), 2, 3);
  CHECK(gx[0] == doctest::Approx(1 - 3));
  CHECK(gx[1] == doctest::Approx(4 - 6));
}
