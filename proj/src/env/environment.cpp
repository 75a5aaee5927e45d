#include "sdoe/env/environment.hpp"

namespace sdoe {

Environment::Environment(Objective& objective, EnvConfig cfg)
    : obj_(&objective), cfg_(std::move(cfg)) {
  if (cfg_.batch_size < 1) throw ContractError("batch_size must be >= 1");
  if (cfg_.num_batches < 1) throw ContractError("num_batches must be >= 1");
  if (cfg_.initial_points < 0)
    throw ContractError("initial_points must be >= 0");
  if (cfg_.alpha_explore < 0)
    throw ContractError("alpha_explore must be >= 0");
  if (cfg_.discount < 0 || cfg_.discount > 1)
    throw ContractError("discount must lie in [0,1]");
  if (cfg_.fixed_hyperparams &&
      cfg_.fixed_hyperparams->dim() != obj_->dim())
    throw ContractError("fixed hyperparameters have the wrong dimension");
}

const GpModel& Environment::model() const {
  if (!model_) throw ContractError("environment not reset");
  return *model_;
}

double Environment::best_observed() const {
  if (data_.size() == 0) throw ContractError("environment not reset");
  return data_.outputs.minCoeff();
}

MinStatistics Environment::compute_min_stats() const {
  if (obj_->fixed_candidates())
    return model_->min_statistics(base_candidates_);
  // Include the training inputs so the search never misses a minimum that
  // sits between grid nodes at an already-evaluated location.
  return model_->min_statistics(append_rows(base_candidates_, data_.inputs));
}

void Environment::refit(Rng& rng, bool initial) {
  if (cfg_.fixed_hyperparams) {
    hp_ = *cfg_.fixed_hyperparams;
  } else if (initial || cfg_.refit_each_step) {
    FitConfig fc = cfg_.fit;
    if (!initial) fc.warm_start = hp_;
    hp_ = fit_hyperparams(data_, fc, rng);
  }
  model_.emplace(data_, hp_);
}

EnvState Environment::reset(Rng& rng) {
  obj_->reset_state();
  data_ = Dataset{};
  trace_ = ConvergenceTrace{};

  const int d = obj_->dim();
  if (const Mat* fixed = obj_->fixed_candidates()) {
    base_candidates_ = *fixed;
  } else {
    base_candidates_ = make_base_candidates(cfg_.candidates, d, rng);
  }

  const int n0 =
      cfg_.initial_points > 0 ? cfg_.initial_points : cfg_.batch_size;
  Mat initial(n0, d);
  for (Eigen::Index i = 0; i < initial.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      initial(i, j) = rng.uniform(kDomainLo, kDomainHi);

  const BatchResult res = obj_->evaluate_batch(initial);
  data_.append(res.points, res.values);
  refit(rng, /*initial=*/true);
  stats_ = compute_min_stats();

  state_ = EnvState{res.points, stats_.min_mean, stats_.min_std, 0};
  trace_.rows.push_back(TraceRow{0, obj_->evaluations_used(), best_observed(),
                                 stats_.min_mean, stats_.min_std, 0.0});
  live_ = true;
  return state_;
}

std::pair<EnvState, double> Environment::step(const Mat& batch, Rng& rng) {
  if (!live_) throw ContractError("step before reset");
  if (budget_exhausted())
    throw ContractError("evaluation budget exhausted");
  if (batch.rows() != cfg_.batch_size || batch.cols() != obj_->dim())
    throw ContractError("step: batch has the wrong shape");
  // Catch a broken proposer loudly: NaN coordinates would otherwise slip
  // through clipping and quietly poison every later GP fit.
  if (!batch.allFinite())
    throw ContractError("step: batch contains non-finite coordinates");

  const MinStatistics prev = stats_;
  const BatchResult res = obj_->evaluate_batch(batch);
  data_.append(res.points, res.values);
  refit(rng, /*initial=*/false);
  stats_ = compute_min_stats();

  const double reward = compute_reward(prev, stats_, cfg_.alpha_explore);
  state_ = EnvState{res.points, stats_.min_mean, stats_.min_std,
                    state_.step_index + 1};
  trace_.rows.push_back(TraceRow{state_.step_index, obj_->evaluations_used(),
                                 best_observed(), stats_.min_mean,
                                 stats_.min_std, reward});
  return {state_, reward};
}

}  // namespace sdoe
