#pragma once

#include "sdoe/bench/objective.hpp"
#include "sdoe/cli/config.hpp"

#include <memory>
#include <string>

namespace sdoe {

// Instantiates the configured objective source (synthetic function, dataset
// pool, or external process). Reused across seeds; runs reset its state.
std::unique_ptr<Objective> make_test_objective(const ExperimentConfig& cfg);

// Runs the configured task and writes all artifacts into out_dir:
// resolved_config.txt always; then per task a checkpoint + training log, or
// per-seed trace CSVs, plus summary.json for comparisons. Returns 0 on
// success or 1 after writing an INCOMPLETE marker describing the failure.
// Configuration-level problems (ConfigError, ParseError) propagate to the
// caller, which maps them to exit code 2.
int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace sdoe
