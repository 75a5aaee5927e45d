#include "sdoe/policy/policy.hpp"

#include <cmath>

namespace sdoe {

Vec encode_state(const EnvState& state) {
  const Eigen::Index n = state.last_batch.rows();
  const Eigen::Index d = state.last_batch.cols();
  Vec sv(n * d + 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sv[i * d + j] = state.last_batch(i, j);
  sv[n * d] = state.min_mean;
  sv[n * d + 1] = state.min_std;
  return sv;
}

Vec sample_averaged_action(const PolicyParams& params, int K, Rng& rng) {
  if (K < 1) throw ContractError("sample count must be >= 1");
  if (params.means.size() != params.variances.size())
    throw ContractError("policy parameter length mismatch");
  const Eigen::Index a = params.means.size();
  Vec sum = Vec::Zero(a);
  for (int k = 0; k < K; ++k)
    for (Eigen::Index i = 0; i < a; ++i)
      sum[i] += params.means[i] +
                std::sqrt(params.variances[i]) * rng.normal();
  Vec action = sum / static_cast<double>(K);
  for (Eigen::Index i = 0; i < a; ++i)
    action[i] = clamp_to_domain(action[i]);
  return action;
}

Mat reshape_batch(const Vec& flat, int n, int d) {
  if (flat.size() != static_cast<Eigen::Index>(n) * d)
    throw ContractError("reshape_batch: length mismatch");
  Mat batch(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) batch(i, j) = flat[i * d + j];
  return batch;
}

PolicyParams reinforce_param_update(const PolicyParams& params, const Vec& ac,
                                    double weight, double lr,
                                    VarianceUpdate mode, double var_floor,
                                    double var_cap) {
  const Eigen::Index a = params.means.size();
  if (ac.size() != a || params.variances.size() != a)
    throw ContractError("reinforce update: dimension mismatch");

  const double lw = lr * weight;
  PolicyParams out;
  out.means.resize(a);
  out.variances.resize(a);
  for (Eigen::Index i = 0; i < a; ++i) {
    const double mu = params.means[i];
    const double w2 = params.variances[i];
    if (!(w2 > 0.0))
      throw ContractError("reinforce update: non-positive variance");
    const double delta = ac[i] - mu;

    out.means[i] = mu + lw * (delta / w2);
    double v;
    if (mode == VarianceUpdate::paper) {
      v = w2 + (-0.5 * lw) * (delta * delta / w2 + 1.0 / w2);
    } else {
      v = w2 + lw * ((delta * delta - w2) / (2.0 * w2 * w2));
    }
    out.variances[i] = std::clamp(v, var_floor, var_cap);
  }
  return out;
}

}  // namespace sdoe
