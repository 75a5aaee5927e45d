#include "sdoe/baseline/batch_bo.hpp"

#include <cmath>
#include <vector>

namespace sdoe {

double expected_improvement(double mean, double std, double best) {
  if (std <= 1e-12) return 0.0;
  const double z = (best - mean) / std;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf =
      std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
  return std::max(0.0, (best - mean) * cdf + std * pdf);
}

Mat propose_batch_constant_liar(const GpModel& model, int n,
                                const Mat& candidates, LiarMode liar) {
  if (n < 1) throw ContractError("batch size must be >= 1");
  if (candidates.rows() < n)
    throw ContractError("fewer candidates than batch slots");
  if (model.empty())
    throw ContractError("propose requires a conditioned model");

  Dataset work = model.data();
  const Hyperparams hp = model.hyperparams();  // fixed within the batch
  std::vector<Eigen::Index> remaining(static_cast<size_t>(candidates.rows()));
  for (size_t i = 0; i < remaining.size(); ++i)
    remaining[i] = static_cast<Eigen::Index>(i);

  Mat batch(n, candidates.cols());
  for (int pick = 0; pick < n; ++pick) {
    const GpModel posterior(work, hp);
    const double best = work.outputs.minCoeff();

    Mat pool(static_cast<Eigen::Index>(remaining.size()), candidates.cols());
    for (size_t i = 0; i < remaining.size(); ++i)
      pool.row(static_cast<Eigen::Index>(i)) = candidates.row(remaining[i]);
    auto [means, stds] = posterior.predict_batch(pool);

    size_t arg = 0;
    double best_ei = -1.0;
    for (size_t i = 0; i < remaining.size(); ++i) {
      const double ei = expected_improvement(
          means[static_cast<Eigen::Index>(i)],
          stds[static_cast<Eigen::Index>(i)], best);
      if (ei > best_ei) {  // strict: ties keep the lowest index
        best_ei = ei;
        arg = i;
      }
    }

    const Vec chosen = pool.row(static_cast<Eigen::Index>(arg));
    batch.row(pick) = chosen.transpose();
    const double lie = liar == LiarMode::best
                           ? best
                           : posterior.predict(chosen).mean;
    Mat point = chosen.transpose();
    Vec value(1);
    value[0] = lie;
    work.append(point, value);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(arg));
  }
  return batch;
}

Mat filter_taken_rows(const Mat& candidates, const Mat& taken) {
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<size_t>(candidates.rows()));
  for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
    bool hit = false;
    for (Eigen::Index k = 0; k < taken.rows() && !hit; ++k)
      hit = (candidates.row(i).array() == taken.row(k).array()).all();
    if (!hit) keep.push_back(i);
  }
  Mat out(static_cast<Eigen::Index>(keep.size()), candidates.cols());
  for (size_t i = 0; i < keep.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = candidates.row(keep[i]);
  return out;
}

ConvergenceTrace run_batch_bo(Objective& objective, const BaselineConfig& cfg,
                              Rng& rng) {
  Environment env(objective, cfg.env);
  env.reset(rng);
  while (!env.budget_exhausted()) {
    const Mat pool =
        filter_taken_rows(env.base_candidates(), env.data().inputs);
    const Mat batch = propose_batch_constant_liar(
        env.model(), cfg.env.batch_size, pool, cfg.liar);
    env.step(batch, rng);
  }
  return env.trace();
}

}  // namespace sdoe
