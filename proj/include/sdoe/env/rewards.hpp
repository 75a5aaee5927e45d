#pragma once

#include "sdoe/core/types.hpp"
#include "sdoe/gp/types.hpp"

namespace sdoe {

// Improvement in the posterior-minimum statistics, negated so that progress
// (both statistics dropping) yields positive reward. alpha weights the
// uncertainty term against the mean term.
inline double compute_reward(const MinStatistics& prev,
                             const MinStatistics& curr, double alpha) {
  return -((curr.min_mean - prev.min_mean) +
           alpha * (curr.min_std - prev.min_std));
}

// Discounted return with the first reward already weighted by gamma^1:
// R = sum_{i=1..m} gamma^i * r_i.
inline double cumulative_reward(const Vec& rewards, double gamma) {
  double total = 0.0;
  double g = 1.0;
  for (Eigen::Index i = 0; i < rewards.size(); ++i) {
    g *= gamma;
    total += g * rewards[i];
  }
  return total;
}

// Tail of the discounted return after step j (0-based partial sums):
// R[m] - R[j] = sum_{i=j+1..m} gamma^i * r_i. j ranges over [0, m].
inline double reward_to_go(const Vec& rewards, Eigen::Index j, double gamma) {
  if (j < 0 || j > rewards.size())
    throw ContractError("reward_to_go: step index out of range");
  double total = 0.0;
  double g = 1.0;
  for (Eigen::Index i = 0; i < rewards.size(); ++i) {
    g *= gamma;
    if (i >= j) total += g * rewards[i];
  }
  return total;
}

}  // namespace sdoe
