#pragma once

#include "sdoe/core/rng.hpp"
#include "sdoe/env/environment.hpp"
#include "sdoe/policy/net.hpp"

namespace sdoe {

// Variance step used by the policy-gradient update. `paper` applies the
// literal increment -0.5*lr*w*((ac-mu)^2/w2 + 1/w2); `score` uses the
// score-function derivative lr*w*((ac-mu)^2 - w2)/(2*w2^2).
enum class VarianceUpdate { paper, score };

struct PolicyConfig {
  int sample_count = 10;        // K draws averaged into one action
  double reinforce_lr = 0.01;   // policy-gradient step size
  VarianceUpdate variance_update = VarianceUpdate::paper;
  double variance_floor = 1e-6;
  double variance_cap = 9.0;
  int supervised_epochs = 50;   // per-episode refit schedule
  double supervised_lr = 1e-3;
};

struct SupervisedPair {
  Vec state;            // encoded input
  PolicyParams target;  // post-update parameters the net should reproduce
};

// Flattens last_batch row-major (point by point), then appends min_mean and
// min_std: length d*n + 2.
Vec encode_state(const EnvState& state);

// Average of K i.i.d. draws from N(means, diag variances), coordinatewise
// clipped into the normalized domain. Draw order is fixed (draw-major,
// coordinate-minor) so results are reproducible for a given rng state.
Vec sample_averaged_action(const PolicyParams& params, int K, Rng& rng);

// Rows of n points of dimension d from a flattened action (inverse of the
// encode_state flattening).
Mat reshape_batch(const Vec& flat, int n, int d);

// One additive policy-gradient step on (means, variances) toward action
// `ac`, weighted by the reward-to-go `weight`; variances are clamped into
// [floor, cap] afterwards. Coordinatewise and independent.
PolicyParams reinforce_param_update(const PolicyParams& params, const Vec& ac,
                                    double weight, double lr,
                                    VarianceUpdate mode, double var_floor,
                                    double var_cap);

}  // namespace sdoe
