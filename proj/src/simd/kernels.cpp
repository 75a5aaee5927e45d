#include "sdoe/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace sdoe::simd {

namespace detail {

void weighted_sq_diff_accum_scalar(double* acc, const double* v, double x,
                                   double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double d = v[i] - x;
    acc[i] += w * d * d;
  }
}

void exp_neg_half_scale_scalar(double* out, const double* sq, double s2,
                               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = s2 * std::exp(-0.5 * sq[i]);
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

#if defined(__x86_64__) || defined(__i386__)
namespace detail {
// Defined in kernels_avx2.cpp, compiled with -mavx2 -mfma.
void weighted_sq_diff_accum_avx2(double* acc, const double* v, double x,
                                 double w, std::size_t n);
void exp_neg_half_scale_avx2(double* out, const double* sq, double s2,
                             std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
}  // namespace detail
#endif

namespace {

struct KernelTable {
  void (*wsd)(double*, const double*, double, double, std::size_t);
  void (*ens)(double*, const double*, double, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  Isa isa;
};

const KernelTable kScalarTable = {
    detail::weighted_sq_diff_accum_scalar,
    detail::exp_neg_half_scale_scalar,
    detail::dot_scalar,
    Isa::scalar,
};

#if defined(__x86_64__) || defined(__i386__)
const KernelTable kAvx2Table = {
    detail::weighted_sq_diff_accum_avx2,
    detail::exp_neg_half_scale_avx2,
    detail::dot_avx2,
    Isa::avx2,
};
#endif

const KernelTable* detect() {
#if defined(__x86_64__) || defined(__i386__)
  if (cpu_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

const KernelTable* g_table = detect();

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return g_table->isa; }

void force_isa(Isa isa) {
  if (isa == Isa::scalar) {
    g_table = &kScalarTable;
    return;
  }
#if defined(__x86_64__) || defined(__i386__)
  if (cpu_has_avx2()) {
    g_table = &kAvx2Table;
    return;
  }
#endif
  throw std::runtime_error("requested ISA not supported on this CPU");
}

void weighted_sq_diff_accum(double* acc, const double* v, double x, double w,
                            std::size_t n) {
  g_table->wsd(acc, v, x, w, n);
}

void exp_neg_half_scale(double* out, const double* sq, double s2,
                        std::size_t n) {
  g_table->ens(out, sq, s2, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return g_table->dot(a, b, n);
}

}  // namespace sdoe::simd
