#pragma once

#include <Eigen/Dense>

#include "sdoe/core/types.hpp"

namespace sdoe {

// ARD squared-exponential kernel parameters plus observation noise.
struct Hyperparams {
  Vec lengthscales;              // one per input dimension, > 0
  double signal_variance = 1.0;  // s^2 > 0
  double noise_variance = 0.0;   // sigma^2 >= 0

  int dim() const { return static_cast<int>(lengthscales.size()); }

  static Hyperparams isotropic(int d, double lengthscale, double s2, double noise) {
    Hyperparams hp;
    hp.lengthscales = Vec::Constant(d, lengthscale);
    hp.signal_variance = s2;
    hp.noise_variance = noise;
    return hp;
  }
};

// Growing training set. Points are rows of `inputs`; Eigen's column-major
// storage keeps each dimension contiguous, which the simd kernels rely on.
struct Dataset {
  Mat inputs;   // N x d
  Vec outputs;  // N

  Eigen::Index size() const { return inputs.rows(); }
  int dim() const { return static_cast<int>(inputs.cols()); }

  void append(const Mat& batch, const Vec& values) {
    if (batch.rows() != values.size())
      throw ContractError("dataset append: batch/value count mismatch");
    if (size() > 0 && batch.cols() != inputs.cols())
      throw ContractError("dataset append: dimension mismatch");
    Eigen::Index n0 = inputs.rows();
    if (n0 == 0) {
      inputs = batch;
      outputs = values;
      return;
    }
    inputs.conservativeResize(n0 + batch.rows(), Eigen::NoChange);
    inputs.bottomRows(batch.rows()) = batch;
    outputs.conservativeResize(n0 + values.size());
    outputs.tail(values.size()) = values;
  }
};

// Posterior-mean minimum over a candidate set: the observation the sampling
// policy conditions on.
struct MinStatistics {
  Vec argmin;                    // candidate with the smallest posterior mean
  double min_mean = 0.0;
  double min_std = 0.0;
  Eigen::Index candidate_index = 0;
};

}  // namespace sdoe
