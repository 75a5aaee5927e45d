#include "sdoe/cli/experiment.hpp"

#include "sdoe/baseline/batch_bo.hpp"
#include "sdoe/bench/dataset_objective.hpp"
#include "sdoe/bench/subprocess.hpp"
#include "sdoe/cli/summary.hpp"
#include "sdoe/cli/trace_io.hpp"
#include "sdoe/policy/checkpoint.hpp"
#include "sdoe/trainer/trainer.hpp"

#include <filesystem>
#include <fstream>
#include <map>

namespace sdoe {

namespace fs = std::filesystem;

std::unique_ptr<Objective> make_test_objective(const ExperimentConfig& cfg) {
  if (!cfg.test_function.empty())
    return std::make_unique<SyntheticObjective>(cfg.test_function);
  if (!cfg.dataset_path.empty()) {
    GridDataset raw = load_pregen_dataset(cfg.dataset_path);
    return std::make_unique<DatasetObjective>(std::move(raw), cfg.dataset_path,
                                              cfg.maximize);
  }
  if (!cfg.subprocess_cmd.empty()) {
    SubprocessSpec spec;
    spec.command = cfg.subprocess_cmd;
    spec.dim = cfg.subprocess_dim;
    spec.timeout_ms = cfg.subprocess_timeout_ms;
    return std::make_unique<SubprocessObjective>(std::move(spec));
  }
  throw ConfigError("no objective source configured");
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw ContractError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ContractError("write failed for '" + path.string() + "'");
}

std::string seed_file(const char* method, unsigned long long seed) {
  return std::string(method) + "_seed" + std::to_string(seed) + ".csv";
}

void run_train(const ExperimentConfig& cfg, const fs::path& out) {
  FunctionClassSpec spec{cfg.train_function, cfg.shift_range};
  TrainConfig tc;
  tc.num_functions = cfg.num_functions;
  tc.episodes_per_function = cfg.episodes_per_function;
  tc.env = cfg.env;
  tc.policy = cfg.policy;
  tc.seed = cfg.train_seed;
  const TrainResult result = train_policy(spec, tc);
  save_checkpoint(result.net, (out / "checkpoint.txt").string());
  write_training_log(result.log, (out / "training_log.csv").string());
}

// Loads the checkpoint and insists its shape matches the configured batch
// size and objective dimension.
PolicyNet load_matching_net(const ExperimentConfig& cfg, int obj_dim) {
  PolicyNet net = load_checkpoint(cfg.checkpoint_path);
  const int action = obj_dim * cfg.env.batch_size;
  if (net.action_dim() != action || net.input_dim() != action + 2)
    throw ConfigError(
        "checkpoint '" + cfg.checkpoint_path + "' expects action dimension " +
            std::to_string(net.action_dim()) + ", but batch_size x dim = " +
            std::to_string(action),
        "checkpoint");
  return net;
}

std::vector<ConvergenceTrace> run_policy_seeds(const ExperimentConfig& cfg,
                                               Objective& objective,
                                               const PolicyNet& net,
                                               const fs::path& out) {
  std::vector<ConvergenceTrace> traces;
  for (unsigned long long seed : cfg.seeds) {
    PolicyNet working = net;  // per-seed copy keeps seeds independent
    Rng rng(seed);
    ConvergenceTrace trace = deploy_policy(working, objective, cfg.env,
                                           cfg.policy, rng,
                                           cfg.test_time_updates);
    write_trace(trace, (out / seed_file("rl", seed)).string());
    traces.push_back(std::move(trace));
  }
  return traces;
}

std::vector<ConvergenceTrace> run_baseline_seeds(const ExperimentConfig& cfg,
                                                 Objective& objective,
                                                 const fs::path& out) {
  BaselineConfig bc;
  bc.env = cfg.env;
  bc.env.initial_points = cfg.initial_points;
  bc.liar = cfg.liar;
  std::vector<ConvergenceTrace> traces;
  for (unsigned long long seed : cfg.seeds) {
    Rng rng(seed);
    ConvergenceTrace trace = run_batch_bo(objective, bc, rng);
    write_trace(trace, (out / seed_file("bo", seed)).string());
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  const fs::path out(out_dir);
  fs::create_directories(out);
  write_text(out / "resolved_config.txt", render_resolved_config(cfg));

  // Objective and checkpoint problems are configuration-level: let them
  // propagate before any seed runs.
  std::unique_ptr<Objective> objective;
  PolicyNet net;
  if (cfg.task != Task::train) {
    objective = make_test_objective(cfg);
    if (cfg.task == Task::deploy || cfg.task == Task::compare)
      net = load_matching_net(cfg, objective->dim());
  }

  try {
    switch (cfg.task) {
      case Task::train:
        run_train(cfg, out);
        break;
      case Task::deploy:
        run_policy_seeds(cfg, *objective, net, out);
        break;
      case Task::baseline:
        run_baseline_seeds(cfg, *objective, out);
        break;
      case Task::compare: {
        std::map<std::string, std::vector<ConvergenceTrace>> by_method;
        by_method.emplace("rl", run_policy_seeds(cfg, *objective, net, out));
        by_method.emplace("bo", run_baseline_seeds(cfg, *objective, out));
        const ComparisonSummary summary =
            compare_summary(by_method, cfg.threshold);
        write_summary_json(summary, (out / "summary.json").string());
        break;
      }
    }
  } catch (const std::exception& e) {
    write_text(out / "INCOMPLETE",
               std::string("experiment failed: ") + e.what() + "\n");
    return 1;
  }
  return 0;
}

}  // namespace sdoe
