#pragma once

#include "sdoe/core/rng.hpp"
#include "sdoe/core/types.hpp"

#include <vector>

namespace sdoe {

// Gaussian proposal distribution over a flattened batch: one (mean,
// variance) pair per action coordinate.
struct PolicyParams {
  Vec means;      // action_dim
  Vec variances;  // action_dim, strictly positive
};

// Two-hidden-layer perceptron (16 rectified units each) mapping an encoded
// state to raw policy outputs: the first action_dim entries are the means,
// the rest pass through a softplus to become variances. Weights are public:
// checkpointing and the supervised fit touch them directly.
class PolicyNet {
 public:
  static constexpr int kHidden = 16;

  PolicyNet() = default;
  PolicyNet(int input_dim, int action_dim);

  // He-style scaled normal weights, zero biases.
  void init_weights(Rng& rng);

  int input_dim() const { return static_cast<int>(W1.cols()); }
  int action_dim() const { return static_cast<int>(b3.size()) / 2; }

  struct ForwardCache {
    Vec x, z1, a1, z2, a2, out;
  };

  // Raw outputs (means head, then pre-transform variance head). The cache,
  // when given, records activations for backpropagation.
  Vec forward_raw(const Vec& sv, ForwardCache* cache = nullptr) const;

  // Full forward pass: softplus on the variance head, then clamping into
  // [var_floor, var_cap].
  PolicyParams forward(const Vec& sv, double var_floor = 1e-6,
                       double var_cap = 9.0) const;

  Mat W1; Vec b1;  // hidden1 x input
  Mat W2; Vec b2;  // hidden2 x hidden1
  Mat W3; Vec b3;  // 2*action_dim x hidden2
};

// Overflow-safe softplus and its inverse (log(e^y - 1)); inverse requires
// y > 0.
double softplus(double z);
double inv_softplus(double y);

struct NetGradients {
  Mat W1; Vec b1;
  Mat W2; Vec b2;
  Mat W3; Vec b3;
};

// Mean squared error between raw net outputs and raw-space targets, averaged
// over every output element of every pair; gradients accumulated into `g`.
double net_loss_and_grad(const PolicyNet& net, const std::vector<Vec>& inputs,
                         const std::vector<Vec>& raw_targets, NetGradients& g);

double net_loss(const PolicyNet& net, const std::vector<Vec>& inputs,
                const std::vector<Vec>& raw_targets);

// Full-batch gradient descent for `epochs` steps; the returned net is the
// best iterate seen (loss never ends worse than it started).
void fit_net(PolicyNet& net, const std::vector<Vec>& inputs,
             const std::vector<Vec>& raw_targets, int epochs, double lr);

}  // namespace sdoe
