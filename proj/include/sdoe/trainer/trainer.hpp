#pragma once

#include "sdoe/bench/objective.hpp"
#include "sdoe/env/environment.hpp"
#include "sdoe/policy/policy.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sdoe {

// A family of related objectives to train across: a named base function
// relocated by a per-dimension random shift (normalized units). A zero range
// degenerates to the single base function.
struct FunctionClassSpec {
  std::string base = "ackley";
  double shift_range = 1.0;  // each shift coordinate ~ uniform(-range, range)
};

struct TrainConfig {
  int num_functions = 1;           // objectives sampled from the class
  int episodes_per_function = 200;
  EnvConfig env;
  PolicyConfig policy;
  unsigned long long seed = 0;
};

// Everything one episode produced, for logging and invariants.
struct EpisodeRecord {
  std::vector<EnvState> states;        // m+1
  std::vector<Vec> state_vecs;         // m+1 encoded states
  std::vector<Vec> actions;            // m flattened clipped actions
  std::vector<PolicyParams> emitted;   // m parameter sets the net produced
  Vec rewards;                         // m
  ConvergenceTrace trace;              // m+1 rows
  double episode_return = 0.0;         // discounted, per env config
};

struct EpisodeLogRow {
  int function_index = 0;
  int episode_index = 0;
  double episode_return = 0.0;
  double final_best_observed = 0.0;
};

struct TrainResult {
  PolicyNet net;
  std::vector<EpisodeLogRow> log;  // one row per episode, in order
};

SyntheticObjective sample_training_function(const FunctionClassSpec& spec,
                                            Rng& rng);

// One full budget with the given (frozen) net, followed by the
// policy-gradient pass: for each step, the reward-to-go-weighted update is
// applied to that step's emitted parameters, and (state, updated params)
// becomes a supervised pair. The net itself is not modified here.
std::pair<EpisodeRecord, std::vector<SupervisedPair>> run_training_episode(
    Objective& objective, const PolicyNet& net, const EnvConfig& env_cfg,
    const PolicyConfig& policy_cfg, Rng& rng);

// Outer training loop: num_functions sampled objectives x
// episodes_per_function episodes, refitting the net on each episode's pairs.
// Deterministic for a given config.
TrainResult train_policy(const FunctionClassSpec& spec, const TrainConfig& tc);

// One full budget on a test objective. With update_at_test_time=false (the
// default) the net is strictly read-only; otherwise the episode's
// policy-gradient pairs are fitted into the net afterwards.
ConvergenceTrace deploy_policy(PolicyNet& net, Objective& objective,
                               const EnvConfig& env_cfg,
                               const PolicyConfig& policy_cfg, Rng& rng,
                               bool update_at_test_time = false);

// CSV: function_index,episode_index,return,final_best_observed.
void write_training_log(const std::vector<EpisodeLogRow>& log,
                        const std::string& path);

}  // namespace sdoe
