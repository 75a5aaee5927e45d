#pragma once

#include "sdoe/core/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdoe {

// Per-method convergence statistics on a shared evaluation axis.
struct MethodSummary {
  std::vector<double> median;  // of best_observed, per checkpoint
  std::vector<double> q1;
  std::vector<double> q3;
  std::optional<long> evals_to_threshold;  // first checkpoint whose median
                                           // clears the threshold
};

struct ComparisonSummary {
  std::vector<long> checkpoints;  // evaluation counts common to all methods
  std::map<std::string, MethodSummary> methods;
  double threshold = 0.0;
};

// Builds the shared checkpoint axis (union of observed evaluation counts,
// restricted to the range every method covers) and aggregates best_observed
// as a step function of evaluations. Linear-interpolation quantiles. Throws
// ContractError when a method has no traces or the ranges do not overlap.
ComparisonSummary compare_summary(
    const std::map<std::string, std::vector<ConvergenceTrace>>& by_method,
    double threshold);

void write_summary_json(const ComparisonSummary& summary,
                        const std::string& path);

// Linear-interpolation quantile of an unsorted sample; p in [0,1].
double quantile(std::vector<double> values, double p);

}  // namespace sdoe
