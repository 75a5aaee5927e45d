#pragma once

#include "sdoe/gp/types.hpp"

namespace sdoe {

// s^2 * exp(-1/2 sum_j (a_j - b_j)^2 / l_j^2). Symmetric in its point
// arguments; throws ContractError on dimension mismatch.
double kernel_eval(const Vec& a, const Vec& b, const Hyperparams& hp);

// N x N covariance of X against itself with `diag_add` (noise plus jitter)
// added to the diagonal. Exactly symmetric: only the lower triangle is
// computed and then mirrored.
Mat gram_matrix(const Mat& X, const Hyperparams& hp, double diag_add);

// N x C covariance between training points X and query points P (both row-major
// point sets). Column c holds k(X_i, P_c).
Mat cross_kernel(const Mat& X, const Mat& P, const Hyperparams& hp);

}  // namespace sdoe
