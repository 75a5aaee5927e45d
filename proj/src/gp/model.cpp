#include "sdoe/gp/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sdoe/gp/kernel.hpp"
#include "sdoe/simd/kernels.hpp"

namespace sdoe {

namespace {

constexpr double kJitterStart = 1e-8;
constexpr double kJitterMax = 1e-2;

// Factor K + (noise + jitter) I, escalating jitter until LLT succeeds.
// Returns the jitter that worked.
double factor_with_jitter(const Mat& K_noisy, double s2, Eigen::LLT<Mat>& llt) {
  const Eigen::Index n = K_noisy.rows();
  for (double jitter = kJitterStart * s2; jitter <= kJitterMax * s2 * (1.0 + 1e-12);
       jitter *= 10.0) {
    Mat K = K_noisy;
    K.diagonal().array() += jitter;
    llt.compute(K);
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw NumericalError(
      "gram factorization failed after jitter escalation (n=" +
      std::to_string(n) + ", s2=" + std::to_string(s2) + ")");
}

}  // namespace

GpModel::GpModel(Dataset data, Hyperparams hp)
    : hp_(std::move(hp)), data_(std::move(data)) {
  if (data_.size() == 0) return;
  if (data_.dim() != hp_.dim())
    throw ContractError("GpModel: dataset/hyperparameter dimension mismatch");
  Mat K = gram_matrix(data_.inputs, hp_, hp_.noise_variance);
  jitter_ = factor_with_jitter(K, hp_.signal_variance, llt_);
  alpha_ = llt_.solve(data_.outputs);
}

Prediction GpModel::predict(const Vec& x) const {
  if (x.size() != hp_.dim())
    throw ContractError("predict: dimension mismatch");
  const double prior_std = std::sqrt(hp_.signal_variance);
  if (empty()) return {0.0, prior_std};

  Mat P = x.transpose();
  Vec k = cross_kernel(data_.inputs, P, hp_).col(0);
  double mean = simd::dot(k.data(), alpha_.data(), static_cast<std::size_t>(k.size()));
  Vec v = llt_.matrixL().solve(k);
  double var = hp_.signal_variance - v.squaredNorm();
  return {mean, std::sqrt(std::max(0.0, var))};
}

std::pair<Vec, Vec> GpModel::predict_batch(const Mat& P) const {
  const Eigen::Index c = P.rows();
  if (P.cols() != hp_.dim())
    throw ContractError("predict_batch: dimension mismatch");
  if (empty()) {
    return {Vec::Zero(c), Vec::Constant(c, std::sqrt(hp_.signal_variance))};
  }
  Mat Kx = cross_kernel(data_.inputs, P, hp_);
  Vec means = Kx.transpose() * alpha_;
  Mat V = llt_.matrixL().solve(Kx);
  Vec stds(c);
  for (Eigen::Index i = 0; i < c; ++i) {
    double var = hp_.signal_variance - V.col(i).squaredNorm();
    stds[i] = std::sqrt(std::max(0.0, var));
  }
  return {std::move(means), std::move(stds)};
}

MinStatistics GpModel::min_statistics(const Mat& candidates) const {
  if (candidates.rows() == 0)
    throw ContractError("min_statistics: empty candidate set");
  if (candidates.cols() != hp_.dim())
    throw ContractError("min_statistics: dimension mismatch");

  MinStatistics out;
  if (empty()) {  // prior mean is identically zero; lowest index wins
    out.argmin = candidates.row(0);
    out.min_mean = 0.0;
    out.min_std = std::sqrt(hp_.signal_variance);
    out.candidate_index = 0;
    return out;
  }

  // Means over the whole pool are cheap (one dense product); the variance
  // solve is only needed at the winner.
  Mat Kx = cross_kernel(data_.inputs, candidates, hp_);
  Vec means = Kx.transpose() * alpha_;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < means.size(); ++i) {
    if (means[i] < means[best]) best = i;  // strict: ties keep the lowest index
  }
  Vec v = llt_.matrixL().solve(Vec(Kx.col(best)));
  const double var = hp_.signal_variance - v.squaredNorm();
  out.argmin = candidates.row(best);
  out.min_mean = means[best];
  out.min_std = std::sqrt(std::max(0.0, var));
  out.candidate_index = best;
  return out;
}

double neg_log_marginal_likelihood(const Dataset& data, const Hyperparams& hp) {
  const Eigen::Index n = data.size();
  if (n == 0) throw ContractError("nlml: empty dataset");
  Mat K = gram_matrix(data.inputs, hp, hp.noise_variance);
  Eigen::LLT<Mat> llt;
  factor_with_jitter(K, hp.signal_variance, llt);
  Vec alpha = llt.solve(data.outputs);
  double quad = simd::dot(data.outputs.data(), alpha.data(),
                          static_cast<std::size_t>(n));
  double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  constexpr double log_two_pi = 1.8378770664093454835607;
  return 0.5 * (quad + logdet + static_cast<double>(n) * log_two_pi);
}

}  // namespace sdoe
