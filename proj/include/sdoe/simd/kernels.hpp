#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the GP and nearest-neighbor code.
// Scalar reference implementations always exist; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. The two variants are
// equivalence-tested against each other (see tests/test_simd.cpp); they
// agree to rounding, not bit-exactly, because the vector path uses FMA.

namespace sdoe::simd {

enum class Isa { scalar, avx2 };

// Instruction set currently in use for the kernels below.
Isa active_isa();

// Override the dispatch decision (tests; forcing avx2 on an unsupported
// CPU throws).
void force_isa(Isa isa);

bool cpu_has_avx2();

// acc[i] += w * (v[i] - x)^2 for i in [0, n). One call per input dimension
// accumulates an ARD-weighted squared distance against a column of points.
void weighted_sq_diff_accum(double* acc, const double* v, double x, double w,
                            std::size_t n);

// out[i] = s2 * exp(-0.5 * sq[i]). Turns accumulated squared distances into
// covariance values.
void exp_neg_half_scale(double* out, const double* sq, double s2, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);

namespace detail {
// Scalar reference path, exposed for the equivalence tests.
void weighted_sq_diff_accum_scalar(double* acc, const double* v, double x,
                                   double w, std::size_t n);
void exp_neg_half_scale_scalar(double* out, const double* sq, double s2,
                               std::size_t n);
double dot_scalar(const double* a, const double* b, std::size_t n);
}  // namespace detail

}  // namespace sdoe::simd
