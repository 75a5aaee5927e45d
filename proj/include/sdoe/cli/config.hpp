#pragma once

#include "sdoe/baseline/batch_bo.hpp"
#include "sdoe/policy/policy.hpp"

#include <string>
#include <vector>

namespace sdoe {

enum class Task { train, deploy, baseline, compare };

const char* task_name(Task t);
Task parse_task(const std::string& name);

// Fully-resolved experiment description. Parsed from a flat `key = value`
// file ('#' starts a comment); unknown keys, duplicates, type errors, and
// constraint violations raise ConfigError naming the key and line.
struct ExperimentConfig {
  Task task = Task::compare;

  // Objective sources; deploy/baseline/compare need exactly one of
  // test_function / dataset / subprocess.
  std::string train_function = "ackley";
  std::string test_function;
  std::string dataset_path;
  std::string subprocess_cmd;
  int subprocess_dim = 0;
  long subprocess_timeout_ms = 10000;
  bool maximize = false;

  EnvConfig env;
  int initial_points = 3;  // baseline-only reset size
  LiarMode liar = LiarMode::best;
  PolicyConfig policy;

  int num_functions = 1;
  int episodes_per_function = 200;
  double shift_range = 1.0;
  unsigned long long train_seed = 0;

  std::vector<unsigned long long> seeds = {0};
  double threshold = -2.5;
  std::string checkpoint_path;  // trained-policy input for deploy/compare
  bool test_time_updates = false;
  bool allow_train_test_overlap = false;
};

// `task` comes from the CLI subcommand; a `task` key inside the file must
// agree with it when present.
ExperimentConfig parse_config_text(const std::string& text, Task task);
ExperimentConfig load_config(const std::string& path, Task task);

// Every effective key/value, reparseable; written next to the outputs so no
// default stays implicit.
std::string render_resolved_config(const ExperimentConfig& cfg);

std::vector<unsigned long long> parse_seed_list(const std::string& text);

}  // namespace sdoe
