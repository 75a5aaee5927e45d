#pragma once

// Shared fixtures: random GP instances with controlled conditioning, dense
// direct-inverse reference implementations for the solver paths, and small
// filesystem utilities. Everything here is deliberately written against the
// math, not against the production code paths it checks.

#include <Eigen/Dense>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sdoe/core/rng.hpp"
#include "sdoe/core/types.hpp"
#include "sdoe/gp/types.hpp"

namespace sdoe::test {

// Squared-exponential covariance computed with a plain loop, independent of
// the production kernel code.
inline double ref_kernel(const Vec& a, const Vec& b, const Hyperparams& hp) {
  double sq = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double d = (a[j] - b[j]) / hp.lengthscales[j];
    sq += d * d;
  }
  return hp.signal_variance * std::exp(-0.5 * sq);
}

inline Mat ref_gram(const Mat& X, const Hyperparams& hp, double diag_add) {
  const Eigen::Index n = X.rows();
  Mat K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      K(i, j) = ref_kernel(X.row(i), X.row(j), hp);
  K.diagonal().array() += diag_add;
  return K;
}

// Points in [lo, hi]^d with pairwise Euclidean separation >= min_sep, so the
// gram matrices of the instances below stay well conditioned and tight
// interpolation tolerances are meaningful.
inline Mat separated_points(Rng& rng, int n, int d, double lo, double hi,
                            double min_sep) {
  Mat X(n, d);
  int placed = 0;
  int attempts = 0;
  while (placed < n) {
    if (++attempts > 20000)
      throw std::runtime_error("separated_points: domain too crowded");
    Vec p(d);
    for (int j = 0; j < d; ++j) p[j] = rng.uniform(lo, hi);
    bool ok = true;
    for (int i = 0; i < placed && ok; ++i)
      ok = (X.row(i).transpose() - p).norm() >= min_sep;
    if (!ok) continue;
    X.row(placed++) = p.transpose();
  }
  return X;
}

struct GpInstance {
  Dataset data;
  Hyperparams hp;
};

// Hyperparameters drawn from a conditioning-friendly range and outputs
// sampled from the corresponding prior (plus observation noise when
// noise > 0). The dataset/hyperparameter pair is self-consistent, so
// likelihood-based checks behave sanely.
inline GpInstance random_gp_instance(Rng& rng, int n, int d, double noise) {
  GpInstance gi;
  gi.hp.lengthscales = Vec(d);
  for (int j = 0; j < d; ++j) gi.hp.lengthscales[j] = rng.uniform(0.4, 1.5);
  gi.hp.signal_variance = rng.uniform(0.5, 2.0);
  gi.hp.noise_variance = noise;

  gi.data.inputs = separated_points(rng, n, d, kDomainLo, kDomainHi, 0.4);
  Mat K = ref_gram(gi.data.inputs, gi.hp, 1e-10);
  Eigen::LLT<Mat> llt(K);
  Vec z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.normal();
  gi.data.outputs = llt.matrixL() * z;
  if (noise > 0.0) {
    const double sd = std::sqrt(noise);
    for (int i = 0; i < n; ++i) gi.data.outputs[i] += sd * rng.normal();
  }
  return gi;
}

struct OraclePrediction {
  double mean = 0.0;
  double var = 0.0;
};

// Posterior via an explicit dense inverse: mean = k^T K^{-1} y,
// var = k(x,x) - k^T K^{-1} k with K = K_f + (noise + ridge) I. Shares no
// code with the Cholesky path under test.
inline OraclePrediction oracle_predict(const Dataset& data,
                                       const Hyperparams& hp, const Vec& x,
                                       double ridge) {
  Mat K = ref_gram(data.inputs, hp, hp.noise_variance + ridge);
  Mat Kinv = K.inverse();
  Vec k(data.size());
  for (Eigen::Index i = 0; i < data.size(); ++i)
    k[i] = ref_kernel(data.inputs.row(i), x, hp);
  OraclePrediction out;
  out.mean = k.dot(Kinv * data.outputs);
  out.var = hp.signal_variance - k.dot(Kinv * k);
  return out;
}

// 1/2 (y^T K^{-1} y + log det K + n log 2 pi) through an eigendecomposition,
// independent of the Cholesky-based production routine.
inline double oracle_nlml(const Dataset& data, const Hyperparams& hp,
                          double ridge) {
  Mat K = ref_gram(data.inputs, hp, hp.noise_variance + ridge);
  Eigen::SelfAdjointEigenSolver<Mat> es(K);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    logdet += std::log(es.eigenvalues()[i]);
  const double quad = data.outputs.dot(K.inverse() * data.outputs);
  const double log_two_pi = 1.8378770664093454835607;
  return 0.5 *
         (quad + logdet + static_cast<double>(data.size()) * log_two_pi);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto cand = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                          std::to_string(i));
      if (std::filesystem::create_directories(cand)) {
        path_ = cand;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace sdoe::test
