// AVX2+FMA variants of the kernels in sdoe/simd/kernels.hpp. This file is
// compiled with -mavx2 -mfma and must only be entered after the runtime
// dispatch has confirmed CPU support.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace sdoe::simd::detail {

namespace {

// Vector exp(x) for double lanes, Cephes-style: reduce against powers of two,
// evaluate a Pade approximant of e^r on the reduced range, rescale through
// the exponent bits. Accurate to a few ulp, which the equivalence tests pin.
inline __m256d exp256_pd(__m256d x) {
  const __m256d exp_hi = _mm256_set1_pd(709.437);
  const __m256d exp_lo = _mm256_set1_pd(-708.39641853226408);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, exp_lo), exp_hi);
  __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  // r = xc - n*ln2, with ln2 split in two for accuracy
  __m256d r = _mm256_fnmadd_pd(n, c1, xc);
  r = _mm256_fnmadd_pd(n, c2, r);
  __m256d rr = _mm256_mul_pd(r, r);

  __m256d px = _mm256_fmadd_pd(p0, rr, p1);
  px = _mm256_fmadd_pd(px, rr, p2);
  px = _mm256_mul_pd(px, r);

  __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
  qx = _mm256_fmadd_pd(qx, rr, q2);
  qx = _mm256_fmadd_pd(qx, rr, q3);

  // e^r = 1 + 2*px/(qx - px)
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // scale by 2^n; n stays within the normal exponent range after clamping
  __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  __m256d res = _mm256_mul_pd(e, _mm256_castsi256_pd(n64));

  // inputs below the clamp underflow to zero
  __m256d under = _mm256_cmp_pd(x, exp_lo, _CMP_LT_OQ);
  return _mm256_blendv_pd(res, _mm256_setzero_pd(), under);
}

}  // namespace

void weighted_sq_diff_accum_avx2(double* acc, const double* v, double x,
                                 double w, std::size_t n) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), vx);
    __m256d a = _mm256_loadu_pd(acc + i);
    a = _mm256_fmadd_pd(_mm256_mul_pd(vw, d), d, a);
    _mm256_storeu_pd(acc + i, a);
  }
  for (; i < n; ++i) {
    double d = v[i] - x;
    acc[i] = std::fma(w * d, d, acc[i]);
  }
}

void exp_neg_half_scale_avx2(double* out, const double* sq, double s2,
                             std::size_t n) {
  const __m256d vs2 = _mm256_set1_pd(s2);
  const __m256d mhalf = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_mul_pd(mhalf, _mm256_loadu_pd(sq + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vs2, exp256_pd(x)));
  }
  for (; i < n; ++i) {
    out[i] = s2 * std::exp(-0.5 * sq[i]);
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

}  // namespace sdoe::simd::detail

#endif  // x86
