#include "sdoe/gp/kernel.hpp"

#include <cmath>
#include <vector>

#include "sdoe/simd/kernels.hpp"

namespace sdoe {

namespace {

void check_hyperparams(const Hyperparams& hp) {
  if (hp.signal_variance <= 0.0 || !std::isfinite(hp.signal_variance))
    throw ContractError("kernel: signal variance must be positive and finite");
  for (Eigen::Index j = 0; j < hp.lengthscales.size(); ++j) {
    if (hp.lengthscales[j] <= 0.0 || !std::isfinite(hp.lengthscales[j]))
      throw ContractError("kernel: lengthscales must be positive and finite");
  }
}

Vec inverse_sq_lengthscales(const Hyperparams& hp) {
  return hp.lengthscales.array().square().inverse();
}

}  // namespace

double kernel_eval(const Vec& a, const Vec& b, const Hyperparams& hp) {
  check_hyperparams(hp);
  if (a.size() != b.size() || a.size() != hp.lengthscales.size())
    throw ContractError("kernel_eval: dimension mismatch");
  double sq = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    double d = (a[j] - b[j]) / hp.lengthscales[j];
    sq += d * d;
  }
  return hp.signal_variance * std::exp(-0.5 * sq);
}

Mat gram_matrix(const Mat& X, const Hyperparams& hp, double diag_add) {
  check_hyperparams(hp);
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n == 0) throw ContractError("gram_matrix: empty point set");
  if (d != hp.lengthscales.size())
    throw ContractError("gram_matrix: dimension mismatch");

  const Vec w = inverse_sq_lengthscales(hp);
  Mat K(n, n);
  std::vector<double> acc(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    // squared ARD distances from point c to points c..n-1
    const Eigen::Index m = n - c;
    std::fill(acc.begin(), acc.begin() + m, 0.0);
    for (Eigen::Index j = 0; j < d; ++j) {
      simd::weighted_sq_diff_accum(acc.data(), X.col(j).data() + c, X(c, j),
                                   w[j], static_cast<std::size_t>(m));
    }
    simd::exp_neg_half_scale(K.col(c).data() + c, acc.data(),
                             hp.signal_variance, static_cast<std::size_t>(m));
    K(c, c) = hp.signal_variance + diag_add;
  }
  // mirror the lower triangle
  for (Eigen::Index c = 1; c < n; ++c)
    for (Eigen::Index r = 0; r < c; ++r) K(r, c) = K(c, r);
  return K;
}

Mat cross_kernel(const Mat& X, const Mat& P, const Hyperparams& hp) {
  check_hyperparams(hp);
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (P.cols() != d || d != hp.lengthscales.size())
    throw ContractError("cross_kernel: dimension mismatch");

  const Vec w = inverse_sq_lengthscales(hp);
  Mat K(n, P.rows());
  std::vector<double> acc(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < P.rows(); ++c) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (Eigen::Index j = 0; j < d; ++j) {
      simd::weighted_sq_diff_accum(acc.data(), X.col(j).data(), P(c, j), w[j],
                                   static_cast<std::size_t>(n));
    }
    simd::exp_neg_half_scale(K.col(c).data(), acc.data(), hp.signal_variance,
                             static_cast<std::size_t>(n));
  }
  return K;
}

}  // namespace sdoe
