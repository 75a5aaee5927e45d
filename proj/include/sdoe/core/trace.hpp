#pragma once

#include <vector>

namespace sdoe {

// One row per sequential-design step. Row 0 describes the initial batch;
// rewards for row 0 are 0 by convention.
struct TraceRow {
  int step = 0;
  long evals = 0;
  double best_observed = 0.0;
  double gp_min_mean = 0.0;
  double gp_min_std = 0.0;
  double reward = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;

  bool empty() const { return rows.empty(); }
  const TraceRow& back() const { return rows.back(); }

  // best_observed as a step function of evaluations spent: the last row with
  // evals <= budget. Requires a non-empty trace with rows.front().evals <= budget.
  double best_at(long budget) const {
    double v = rows.front().best_observed;
    for (const auto& r : rows) {
      if (r.evals > budget) break;
      v = r.best_observed;
    }
    return v;
  }
};

}  // namespace sdoe
