#pragma once

#include <optional>

#include "sdoe/core/rng.hpp"
#include "sdoe/gp/types.hpp"

namespace sdoe {

// Bounds and budget for maximum-likelihood hyperparameter search. The search
// runs over log-parameters with a derivative-free Nelder-Mead simplex,
// restarted from `restarts` start points: an optional warm start, a moment
// heuristic, and seeded random draws within the bounds.
struct FitConfig {
  double lengthscale_lo = 1e-2;
  double lengthscale_hi = 1e2;
  double signal_lo = 1e-4;
  double signal_hi = 1e2;
  double noise_lo = 1e-8;
  double noise_hi = 1.0;

  int restarts = 5;
  int max_evals_per_restart = 120;
  double simplex_tol = 1e-7;

  std::optional<Hyperparams> warm_start;
};

// Returns hyperparameters within bounds whose negative log marginal
// likelihood is no worse than every start candidate evaluated. Deterministic
// for a given rng state. Throws NumericalError if every restart fails.
Hyperparams fit_hyperparams(const Dataset& data, const FitConfig& cfg, Rng& rng);

}  // namespace sdoe
