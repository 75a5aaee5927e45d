#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "sdoe/core/rng.hpp"
#include "sdoe/core/types.hpp"
#include "sdoe/simd/kernels.hpp"

using namespace sdoe;

namespace {

// Restores the dispatch decision when a test forces a particular path.
struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::force_isa(saved); }
};

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 31, 64, 257, 1000};

}  // namespace

TEST_CASE("dispatch reports avx2 exactly when the cpu supports it") {
  if (simd::cpu_has_avx2()) {
    CHECK(simd::active_isa() == simd::Isa::avx2);
    IsaGuard guard;
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
  } else {
    CHECK(simd::active_isa() == simd::Isa::scalar);
    CHECK_THROWS_AS(simd::force_isa(simd::Isa::avx2), ContractError);
  }
}

TEST_CASE("scalar kernels agree with direct formulas") {
  Rng rng(11);
  for (std::size_t n : kSizes) {
    auto v = random_vec(rng, n, -3.0, 3.0);
    auto acc0 = random_vec(rng, n, 0.0, 5.0);
    const double x = rng.uniform(-3.0, 3.0);
    const double w = rng.uniform(0.1, 10.0);

    auto acc = acc0;
    simd::detail::weighted_sq_diff_accum_scalar(acc.data(), v.data(), x, w, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = acc0[i] + w * (v[i] - x) * (v[i] - x);
      CHECK(acc[i] == doctest::Approx(want).epsilon(1e-14));
    }

    auto sq = random_vec(rng, n, 0.0, 60.0);
    std::vector<double> out(n);
    const double s2 = rng.uniform(1e-4, 10.0);
    simd::detail::exp_neg_half_scale_scalar(out.data(), sq.data(), s2, n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(out[i] == doctest::Approx(s2 * std::exp(-0.5 * sq[i])).epsilon(1e-14));
  }
}

TEST_CASE("avx2 weighted squared differences match the scalar reference") {
  if (!simd::cpu_has_avx2()) return;  // nothing to compare on this machine
  IsaGuard guard;
  Rng rng(23);
  for (std::size_t n : kSizes) {
    auto v = random_vec(rng, n, -3.0, 3.0);
    auto acc0 = random_vec(rng, n, 0.0, 5.0);
    const double x = rng.uniform(-3.0, 3.0);
    const double w = rng.uniform(0.01, 100.0);

    auto ref = acc0;
    simd::detail::weighted_sq_diff_accum_scalar(ref.data(), v.data(), x, w, n);
    auto got = acc0;
    simd::force_isa(simd::Isa::avx2);
    simd::weighted_sq_diff_accum(got.data(), v.data(), x, w, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double tol = 1e-12 * std::max(1.0, std::abs(ref[i]));
      CHECK(std::abs(got[i] - ref[i]) <= tol);
    }
  }
}

TEST_CASE("avx2 scaled exponential matches std::exp to rounding") {
  if (!simd::cpu_has_avx2()) return;
  IsaGuard guard;
  simd::force_isa(simd::Isa::avx2);
  Rng rng(37);
  for (std::size_t n : kSizes) {
    // Spread over the whole range the gp code produces: squared distances
    // from ~0 up to hundreds (deep kernel tails).
    auto sq = random_vec(rng, n, 0.0, 600.0);
    if (n > 2) {
      sq[0] = 0.0;
      sq[1] = 1.0;
    }
    const double s2 = rng.uniform(1e-4, 100.0);
    std::vector<double> got(n);
    simd::exp_neg_half_scale(got.data(), sq.data(), s2, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = s2 * std::exp(-0.5 * sq[i]);
      CHECK(std::abs(got[i] - want) <= 1e-13 * std::max(want, 1e-280));
    }
  }
}

TEST_CASE("avx2 dot product matches the scalar reference") {
  if (!simd::cpu_has_avx2()) return;
  IsaGuard guard;
  Rng rng(51);
  for (std::size_t n : kSizes) {
    auto a = random_vec(rng, n, -2.0, 2.0);
    auto b = random_vec(rng, n, -2.0, 2.0);
    const double ref = simd::detail::dot_scalar(a.data(), b.data(), n);
    simd::force_isa(simd::Isa::avx2);
    const double got = simd::dot(a.data(), b.data(), n);
    double mag = 1e-15;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    CHECK(std::abs(got - ref) <= 1e-13 * mag);
  }
}

TEST_CASE("forced scalar path drives the public entry points") {
  IsaGuard guard;
  simd::force_isa(simd::Isa::scalar);
  const double a[3] = {1.0, 2.0, 3.0};
  const double b[3] = {4.0, 5.0, 6.0};
  CHECK(simd::dot(a, b, 3) == doctest::Approx(32.0).epsilon(1e-15));
  double acc[2] = {0.0, 1.0};
  const double v[2] = {2.0, -1.0};
  simd::weighted_sq_diff_accum(acc, v, 1.0, 2.0, 2);
  CHECK(acc[0] == doctest::Approx(2.0).epsilon(1e-15));   // 2*(2-1)^2
  CHECK(acc[1] == doctest::Approx(9.0).epsilon(1e-15));   // 1 + 2*(-1-1)^2
  double out[1];
  const double sq[1] = {2.0};
  simd::exp_neg_half_scale(out, sq, 3.0, 1);
  CHECK(out[0] == doctest::Approx(3.0 * std::exp(-1.0)).epsilon(1e-15));
}
