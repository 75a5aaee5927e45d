#pragma once

#include "sdoe/env/environment.hpp"

namespace sdoe {

// Fabricated output attached to each point while assembling a batch: the
// incumbent best, or the posterior mean at the chosen point.
enum class LiarMode { best, mean };

struct BaselineConfig {
  EnvConfig env;           // batch/stepping shared with the policy runs
  LiarMode liar = LiarMode::best;
};

// Expected improvement for minimization against the incumbent `best`:
// (best - mean) Phi(z) + std phi(z) with z = (best - mean)/std; zero when
// std <= 1e-12. Never negative.
double expected_improvement(double mean, double std, double best);

// Greedy batch assembly: n times, pick the argmax-EI candidate (ties to the
// lowest index), append it with the liar output, and recondition the
// posterior with hyperparameters held fixed. Candidate rows must be distinct
// and not coincide with training inputs; returns n distinct rows.
Mat propose_batch_constant_liar(const GpModel& model, int n,
                                const Mat& candidates, LiarMode liar);

// Full batch-BO run under the shared environment: initial_points random
// draws, then num_batches propose/evaluate/refit rounds. Same trace schema
// and reward bookkeeping as the policy runs.
ConvergenceTrace run_batch_bo(Objective& objective, const BaselineConfig& cfg,
                              Rng& rng);

// Rows of `candidates` that do not exactly match any row of `taken`.
// Used to keep already-evaluated points out of the acquisition argmax.
Mat filter_taken_rows(const Mat& candidates, const Mat& taken);

}  // namespace sdoe
