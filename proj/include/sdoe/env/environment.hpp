#pragma once

#include "sdoe/bench/objective.hpp"
#include "sdoe/core/rng.hpp"
#include "sdoe/core/trace.hpp"
#include "sdoe/env/rewards.hpp"
#include "sdoe/gp/candidates.hpp"
#include "sdoe/gp/fit.hpp"
#include "sdoe/gp/model.hpp"

#include <optional>
#include <utility>

namespace sdoe {

struct EnvConfig {
  int batch_size = 5;      // n: points evaluated per step
  int num_batches = 30;    // m: steps after the initial batch
  int initial_points = 0;  // size of the reset batch; 0 means batch_size
  double alpha_explore = 1.0;  // weight of the uncertainty term in the reward
  double discount = 1.0;       // gamma for returns

  CandidateSpec candidates;
  FitConfig fit;

  // Hyperparameter schedule: fixed_hyperparams wins if set (no fitting at
  // all); otherwise fit at reset and, when refit_each_step, after every
  // batch (warm-started from the current values).
  bool refit_each_step = true;
  std::optional<Hyperparams> fixed_hyperparams;

  // n*m proposed evaluations; the reset batch comes on top of these.
  long step_budget() const {
    return static_cast<long>(batch_size) * num_batches;
  }
  long total_evaluations() const {
    return step_budget() + (initial_points > 0 ? initial_points : batch_size);
  }
};

// What the sampling policy observes: the batch just evaluated plus the
// posterior-minimum statistics.
struct EnvState {
  Mat last_batch;  // n x d
  double min_mean = 0.0;
  double min_std = 0.0;
  int step_index = 0;
};

// One sequential-design run: owns the growing dataset, the GP refit
// schedule, the posterior-minimum bookkeeping, and the convergence trace.
// Both the policy-driven loop and the batch-BO baseline step through this
// class so budgets, rewards, and traces are computed identically.
class Environment {
 public:
  Environment(Objective& objective, EnvConfig cfg);

  // Starts an episode: clears objective state, evaluates a uniform random
  // initial batch, fits the GP, and records the first trace row.
  EnvState reset(Rng& rng);

  // Evaluates one proposed batch (n x d), extends the dataset, refits per
  // config, and returns the new state plus its reward. Throws ContractError
  // once num_batches steps have been taken.
  std::pair<EnvState, double> step(const Mat& batch, Rng& rng);

  bool budget_exhausted() const {
    return state_.step_index >= cfg_.num_batches;
  }

  const EnvState& state() const { return state_; }
  const MinStatistics& min_stats() const { return stats_; }
  const GpModel& model() const;
  const Dataset& data() const { return data_; }
  const ConvergenceTrace& trace() const { return trace_; }
  const EnvConfig& config() const { return cfg_; }
  Objective& objective() { return *obj_; }
  double best_observed() const;

  // Candidate pool for acquisition optimization: the objective's own grid
  // when it has one, otherwise the configured grid/random base set.
  const Mat& base_candidates() const { return base_candidates_; }

 private:
  MinStatistics compute_min_stats() const;
  void refit(Rng& rng, bool initial);

  Objective* obj_;
  EnvConfig cfg_;
  Dataset data_;
  Hyperparams hp_;
  std::optional<GpModel> model_;
  Mat base_candidates_;
  EnvState state_;
  MinStatistics stats_;
  ConvergenceTrace trace_;
  bool live_ = false;  // reset() has run
};

}  // namespace sdoe
