#include "sdoe/policy/net.hpp"

#include <cmath>

namespace sdoe {

double softplus(double z) {
  if (z > 30.0) return z;           // log1p(exp(z)) == z to double precision
  if (z < -30.0) return std::exp(z);
  return std::log1p(std::exp(z));
}

double inv_softplus(double y) {
  if (y <= 0.0) throw ContractError("inv_softplus requires y > 0");
  if (y > 30.0) return y;
  return std::log(std::expm1(y));
}

PolicyNet::PolicyNet(int input_dim, int action_dim) {
  if (input_dim < 1 || action_dim < 1)
    throw ContractError("net dimensions must be >= 1");
  W1 = Mat::Zero(kHidden, input_dim);
  b1 = Vec::Zero(kHidden);
  W2 = Mat::Zero(kHidden, kHidden);
  b2 = Vec::Zero(kHidden);
  W3 = Mat::Zero(2 * action_dim, kHidden);
  b3 = Vec::Zero(2 * action_dim);
}

void PolicyNet::init_weights(Rng& rng) {
  auto fill = [&rng](Mat& w, double gain) {
    const double scale =
        gain * std::sqrt(2.0 / static_cast<double>(w.cols()));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        w(i, j) = scale * rng.normal();
  };
  fill(W1, 1.0);
  fill(W2, 1.0);
  // The output layer starts near zero on purpose: the REINFORCE variance
  // update divides by omega^2, so a head born close to the clamp floor gets
  // its mean updates amplified by up to 1e6 and the policy diverges before
  // it can learn. Near-zero raw outputs start every mean at the domain
  // center and every variance at softplus(0) ~= 0.693.
  fill(W3, 0.01);
  b1.setZero();
  b2.setZero();
  b3.setZero();
}

Vec PolicyNet::forward_raw(const Vec& sv, ForwardCache* cache) const {
  if (sv.size() != W1.cols())
    throw ContractError("forward: state vector has the wrong length");
  Vec z1 = W1 * sv + b1;
  Vec a1 = z1.cwiseMax(0.0);
  Vec z2 = W2 * a1 + b2;
  Vec a2 = z2.cwiseMax(0.0);
  Vec out = W3 * a2 + b3;
  if (cache) {
    cache->x = sv;
    cache->z1 = z1;
    cache->a1 = a1;
    cache->z2 = z2;
    cache->a2 = a2;
    cache->out = out;
  }
  return out;
}

PolicyParams PolicyNet::forward(const Vec& sv, double var_floor,
                                double var_cap) const {
  const Vec raw = forward_raw(sv);
  const int a = action_dim();
  PolicyParams p;
  p.means = raw.head(a);
  p.variances.resize(a);
  for (int i = 0; i < a; ++i)
    p.variances[i] = std::clamp(softplus(raw[a + i]), var_floor, var_cap);
  return p;
}

double net_loss_and_grad(const PolicyNet& net, const std::vector<Vec>& inputs,
                         const std::vector<Vec>& raw_targets,
                         NetGradients& g) {
  if (inputs.empty() || inputs.size() != raw_targets.size())
    throw ContractError("loss: need matching non-empty inputs and targets");
  g.W1 = Mat::Zero(net.W1.rows(), net.W1.cols());
  g.b1 = Vec::Zero(net.b1.size());
  g.W2 = Mat::Zero(net.W2.rows(), net.W2.cols());
  g.b2 = Vec::Zero(net.b2.size());
  g.W3 = Mat::Zero(net.W3.rows(), net.W3.cols());
  g.b3 = Vec::Zero(net.b3.size());

  const double denom =
      static_cast<double>(inputs.size()) * static_cast<double>(net.b3.size());
  double loss = 0.0;
  PolicyNet::ForwardCache c;
  for (size_t p = 0; p < inputs.size(); ++p) {
    if (raw_targets[p].size() != net.b3.size())
      throw ContractError("loss: target has the wrong length");
    const Vec out = net.forward_raw(inputs[p], &c);
    const Vec diff = out - raw_targets[p];
    loss += diff.squaredNorm() / denom;

    const Vec g3 = (2.0 / denom) * diff;
    g.W3 += g3 * c.a2.transpose();
    g.b3 += g3;
    Vec g2 = net.W3.transpose() * g3;
    for (Eigen::Index i = 0; i < g2.size(); ++i)
      if (c.z2[i] <= 0.0) g2[i] = 0.0;
    g.W2 += g2 * c.a1.transpose();
    g.b2 += g2;
    Vec g1 = net.W2.transpose() * g2;
    for (Eigen::Index i = 0; i < g1.size(); ++i)
      if (c.z1[i] <= 0.0) g1[i] = 0.0;
    g.W1 += g1 * c.x.transpose();
    g.b1 += g1;
  }
  return loss;
}

double net_loss(const PolicyNet& net, const std::vector<Vec>& inputs,
                const std::vector<Vec>& raw_targets) {
  double loss = 0.0;
  const double denom =
      static_cast<double>(inputs.size()) * static_cast<double>(net.b3.size());
  for (size_t p = 0; p < inputs.size(); ++p)
    loss += (net.forward_raw(inputs[p]) - raw_targets[p]).squaredNorm() / denom;
  return loss;
}

void fit_net(PolicyNet& net, const std::vector<Vec>& inputs,
             const std::vector<Vec>& raw_targets, int epochs, double lr) {
  if (epochs < 0) throw ContractError("fit_net: negative epoch count");
  NetGradients g;
  PolicyNet best = net;
  double best_loss = net_loss(net, inputs, raw_targets);
  for (int e = 0; e < epochs; ++e) {
    const double loss = net_loss_and_grad(net, inputs, raw_targets, g);
    if (loss < best_loss) {
      best_loss = loss;
      best = net;
    }
    net.W1 -= lr * g.W1;
    net.b1 -= lr * g.b1;
    net.W2 -= lr * g.W2;
    net.b2 -= lr * g.b2;
    net.W3 -= lr * g.W3;
    net.b3 -= lr * g.b3;
  }
  // Restore unless the final iterate is provably no worse; the negated
  // comparison also catches a NaN loss after divergence, where `>` would not.
  if (!(net_loss(net, inputs, raw_targets) <= best_loss)) net = best;
}

}  // namespace sdoe
