#pragma once

#include <Eigen/Cholesky>

#include <utility>

#include "sdoe/gp/types.hpp"

namespace sdoe {

struct Prediction {
  double mean = 0.0;
  double std = 0.0;
};

// Fitted GP: hyperparameters plus the Cholesky factorization of
// K + (noise + jitter) I over the stored dataset. Immutable after
// construction, so instances can be shared read-only across runs.
//
// Jitter starts at 1e-8 * s^2 and escalates by x10 up to 1e-2 * s^2 when the
// factorization fails; past that a NumericalError is thrown.
class GpModel {
 public:
  GpModel(Dataset data, Hyperparams hp);

  Prediction predict(const Vec& x) const;

  // Posterior mean and std at each row of P. Much cheaper than repeated
  // single-point calls: one triangular solve against the whole block.
  std::pair<Vec, Vec> predict_batch(const Mat& P) const;

  // Candidate with the smallest posterior mean; ties resolve to the lowest
  // index. Throws ContractError on an empty candidate set.
  MinStatistics min_statistics(const Mat& candidates) const;

  const Hyperparams& hyperparams() const { return hp_; }
  const Dataset& data() const { return data_; }
  double jitter() const { return jitter_; }
  bool empty() const { return data_.size() == 0; }

 private:
  Hyperparams hp_;
  Dataset data_;
  Eigen::LLT<Mat> llt_;
  Vec alpha_;  // (K + (noise + jitter) I)^{-1} y
  double jitter_ = 0.0;
};

// 1/2 (y^T (K + s_n I)^{-1} y + log det(K + s_n I) + N log 2 pi), where s_n is
// noise plus the jitter actually needed. The objective minimized when fitting.
double neg_log_marginal_likelihood(const Dataset& data, const Hyperparams& hp);

}  // namespace sdoe
