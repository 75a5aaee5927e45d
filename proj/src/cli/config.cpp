#include "sdoe/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sdoe {

const char* task_name(Task t) {
  switch (t) {
    case Task::train: return "train";
    case Task::deploy: return "deploy";
    case Task::baseline: return "baseline";
    case Task::compare: return "compare";
  }
  return "?";
}

Task parse_task(const std::string& name) {
  if (name == "train") return Task::train;
  if (name == "deploy") return Task::deploy;
  if (name == "baseline") return Task::baseline;
  if (name == "compare") return Task::compare;
  throw ConfigError("unknown task '" + name + "'", "task");
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

long parse_long(const std::string& key, const std::string& v, int line) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ConfigError("expected an integer for '" + key + "', got '" + v + "'",
                      key, line);
  return x;
}

double parse_real(const std::string& key, const std::string& v, int line) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(x))
    throw ConfigError("expected a number for '" + key + "', got '" + v + "'",
                      key, line);
  return x;
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected true/false for '" + key + "', got '" + v + "'",
                    key, line);
}

}  // namespace

std::vector<unsigned long long> parse_seed_list(const std::string& text) {
  std::vector<unsigned long long> seeds;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    const char* begin = part.c_str();
    char* end = nullptr;
    const unsigned long long s = std::strtoull(begin, &end, 10);
    if (part.empty() || end == begin || *end != '\0' || part[0] == '-')
      throw ConfigError("bad seed '" + part + "'", "seeds");
    seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError("empty seed list", "seeds");
  return seeds;
}

ExperimentConfig parse_config_text(const std::string& text, Task task) {
  ExperimentConfig cfg;
  cfg.task = task;

  std::map<std::string, int> seen;           // key -> line first set
  using Handler = std::function<void(const std::string&, int)>;
  std::map<std::string, Handler> handlers;

  auto int_key = [&](const char* key, int lo,
                     const std::function<void(int)>& set) {
    handlers[key] = [key, lo, set](const std::string& v, int line) {
      const long x = parse_long(key, v, line);
      if (x < lo)
        throw ConfigError("'" + std::string(key) + "' must be >= " +
                              std::to_string(lo),
                          key, line);
      set(static_cast<int>(x));
    };
  };
  auto real_key = [&](const char* key,
                      const std::function<void(double, int)>& set) {
    handlers[key] = [key, set](const std::string& v, int line) {
      set(parse_real(key, v, line), line);
    };
  };
  auto bool_key = [&](const char* key, bool* dst) {
    handlers[key] = [key, dst](const std::string& v, int line) {
      *dst = parse_bool(key, v, line);
    };
  };
  auto string_key = [&](const char* key, std::string* dst) {
    handlers[key] = [dst](const std::string& v, int) { *dst = v; };
  };

  handlers["task"] = [&cfg](const std::string& v, int line) {
    if (parse_task(v) != cfg.task)
      throw ConfigError("config task '" + v + "' does not match subcommand '" +
                            std::string(task_name(cfg.task)) + "'",
                        "task", line);
  };

  string_key("train_function", &cfg.train_function);
  string_key("test_function", &cfg.test_function);
  string_key("dataset", &cfg.dataset_path);
  string_key("subprocess", &cfg.subprocess_cmd);
  int_key("subprocess_dim", 1, [&](int x) { cfg.subprocess_dim = x; });
  handlers["subprocess_timeout_ms"] = [&cfg](const std::string& v, int line) {
    const long x = parse_long("subprocess_timeout_ms", v, line);
    if (x < 1)
      throw ConfigError("'subprocess_timeout_ms' must be >= 1",
                        "subprocess_timeout_ms", line);
    cfg.subprocess_timeout_ms = x;
  };
  bool_key("maximize", &cfg.maximize);

  int_key("batch_size", 1, [&](int x) { cfg.env.batch_size = x; });
  int_key("num_batches", 1, [&](int x) { cfg.env.num_batches = x; });
  real_key("alpha_explore", [&](double x, int line) {
    if (x < 0)
      throw ConfigError("'alpha_explore' must be >= 0", "alpha_explore", line);
    cfg.env.alpha_explore = x;
  });
  real_key("discount", [&](double x, int line) {
    if (x < 0 || x > 1)
      throw ConfigError("'discount' must lie in [0,1]", "discount", line);
    cfg.env.discount = x;
  });
  int_key("candidate_grid", 2, [&](int x) { cfg.env.candidates.grid_per_dim = x; });
  int_key("candidate_random", 1,
          [&](int x) { cfg.env.candidates.random_count = x; });
  int_key("fit_restarts", 1, [&](int x) { cfg.env.fit.restarts = x; });
  int_key("fit_max_evals", 10,
          [&](int x) { cfg.env.fit.max_evals_per_restart = x; });

  int_key("sample_count", 1, [&](int x) { cfg.policy.sample_count = x; });
  real_key("policy_lr", [&](double x, int line) {
    if (x <= 0) throw ConfigError("'policy_lr' must be > 0", "policy_lr", line);
    cfg.policy.reinforce_lr = x;
  });
  handlers["variance_update"] = [&cfg](const std::string& v, int line) {
    if (v == "paper")
      cfg.policy.variance_update = VarianceUpdate::paper;
    else if (v == "score")
      cfg.policy.variance_update = VarianceUpdate::score;
    else
      throw ConfigError("'variance_update' must be 'paper' or 'score'",
                        "variance_update", line);
  };
  real_key("variance_cap", [&](double x, int line) {
    if (x <= cfg.policy.variance_floor)
      throw ConfigError("'variance_cap' must exceed the variance floor",
                        "variance_cap", line);
    cfg.policy.variance_cap = x;
  });
  int_key("supervised_epochs", 0,
          [&](int x) { cfg.policy.supervised_epochs = x; });
  real_key("supervised_lr", [&](double x, int line) {
    if (x <= 0)
      throw ConfigError("'supervised_lr' must be > 0", "supervised_lr", line);
    cfg.policy.supervised_lr = x;
  });

  int_key("num_functions", 1, [&](int x) { cfg.num_functions = x; });
  int_key("episodes_per_function", 1,
          [&](int x) { cfg.episodes_per_function = x; });
  real_key("shift_range", [&](double x, int line) {
    if (x < 0)
      throw ConfigError("'shift_range' must be >= 0", "shift_range", line);
    cfg.shift_range = x;
  });
  handlers["train_seed"] = [&cfg](const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const unsigned long long s = std::strtoull(begin, &end, 10);
    if (v.empty() || end == begin || *end != '\0' || v[0] == '-')
      throw ConfigError("bad 'train_seed' value '" + v + "'", "train_seed",
                        line);
    cfg.train_seed = s;
  };

  int_key("initial_points", 1, [&](int x) { cfg.initial_points = x; });
  handlers["liar"] = [&cfg](const std::string& v, int line) {
    if (v == "best")
      cfg.liar = LiarMode::best;
    else if (v == "mean")
      cfg.liar = LiarMode::mean;
    else
      throw ConfigError("'liar' must be 'best' or 'mean'", "liar", line);
  };

  handlers["seeds"] = [&cfg](const std::string& v, int line) {
    try {
      cfg.seeds = parse_seed_list(v);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), "seeds", line);
    }
  };
  real_key("threshold", [&](double x, int) { cfg.threshold = x; });
  string_key("checkpoint", &cfg.checkpoint_path);
  bool_key("test_time_updates", &cfg.test_time_updates);
  bool_key("allow_train_test_overlap", &cfg.allow_train_test_overlap);

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got '" + line + "'", "",
                        line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("missing key before '='", "", line_no);
    auto it = handlers.find(key);
    if (it == handlers.end())
      throw ConfigError("unknown key '" + key + "'", key, line_no);
    auto [seen_it, fresh] = seen.emplace(key, line_no);
    if (!fresh)
      throw ConfigError("duplicate key '" + key + "' (first set on line " +
                            std::to_string(seen_it->second) + ")",
                        key, line_no);
    it->second(value, line_no);
  }

  // Cross-key validation.
  const int sources = (cfg.test_function.empty() ? 0 : 1) +
                      (cfg.dataset_path.empty() ? 0 : 1) +
                      (cfg.subprocess_cmd.empty() ? 0 : 1);
  if (cfg.task == Task::train) {
    if (sources != 0)
      throw ConfigError(
          "training uses 'train_function'; remove test_function/dataset/"
          "subprocess",
          "task");
  } else {
    if (sources != 1)
      throw ConfigError(
          "exactly one of test_function / dataset / subprocess is required",
          "task");
  }
  if (!cfg.subprocess_cmd.empty() && cfg.subprocess_dim < 1)
    throw ConfigError("'subprocess_dim' is required with 'subprocess'",
                      "subprocess_dim");
  if ((cfg.task == Task::deploy || cfg.task == Task::compare) &&
      cfg.checkpoint_path.empty())
    throw ConfigError("'" + std::string(task_name(cfg.task)) +
                          "' needs a 'checkpoint' path",
                      "checkpoint");
  if (!cfg.checkpoint_path.empty() &&
      !std::filesystem::exists(cfg.checkpoint_path))
    throw ConfigError("checkpoint '" + cfg.checkpoint_path + "' does not exist",
                      "checkpoint");
  if (!cfg.dataset_path.empty() && !std::filesystem::exists(cfg.dataset_path))
    throw ConfigError("dataset '" + cfg.dataset_path + "' does not exist",
                      "dataset");
  if (!cfg.test_function.empty() && !cfg.allow_train_test_overlap &&
      cfg.test_function == cfg.train_function &&
      (cfg.task == Task::deploy || cfg.task == Task::compare))
    throw ConfigError(
        "test_function matches train_function; set allow_train_test_overlap "
        "= true to evaluate on the training family",
        "test_function");
  return cfg;
}

ExperimentConfig load_config(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), task);
}

std::string render_resolved_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  char buf[64];
  auto real = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  out << "task = " << task_name(cfg.task) << "\n";
  out << "train_function = " << cfg.train_function << "\n";
  if (!cfg.test_function.empty())
    out << "test_function = " << cfg.test_function << "\n";
  if (!cfg.dataset_path.empty()) out << "dataset = " << cfg.dataset_path << "\n";
  if (!cfg.subprocess_cmd.empty()) {
    out << "subprocess = " << cfg.subprocess_cmd << "\n";
    out << "subprocess_dim = " << cfg.subprocess_dim << "\n";
    out << "subprocess_timeout_ms = " << cfg.subprocess_timeout_ms << "\n";
  }
  out << "maximize = " << (cfg.maximize ? "true" : "false") << "\n";
  out << "batch_size = " << cfg.env.batch_size << "\n";
  out << "num_batches = " << cfg.env.num_batches << "\n";
  out << "alpha_explore = " << real(cfg.env.alpha_explore) << "\n";
  out << "discount = " << real(cfg.env.discount) << "\n";
  out << "candidate_grid = " << cfg.env.candidates.grid_per_dim << "\n";
  out << "candidate_random = " << cfg.env.candidates.random_count << "\n";
  out << "fit_restarts = " << cfg.env.fit.restarts << "\n";
  out << "fit_max_evals = " << cfg.env.fit.max_evals_per_restart << "\n";
  out << "sample_count = " << cfg.policy.sample_count << "\n";
  out << "policy_lr = " << real(cfg.policy.reinforce_lr) << "\n";
  out << "variance_update = "
      << (cfg.policy.variance_update == VarianceUpdate::paper ? "paper"
                                                              : "score")
      << "\n";
  out << "variance_cap = " << real(cfg.policy.variance_cap) << "\n";
  out << "supervised_epochs = " << cfg.policy.supervised_epochs << "\n";
  out << "supervised_lr = " << real(cfg.policy.supervised_lr) << "\n";
  out << "num_functions = " << cfg.num_functions << "\n";
  out << "episodes_per_function = " << cfg.episodes_per_function << "\n";
  out << "shift_range = " << real(cfg.shift_range) << "\n";
  out << "train_seed = " << cfg.train_seed << "\n";
  out << "initial_points = " << cfg.initial_points << "\n";
  out << "liar = " << (cfg.liar == LiarMode::best ? "best" : "mean") << "\n";
  out << "seeds = ";
  for (size_t i = 0; i < cfg.seeds.size(); ++i)
    out << (i ? "," : "") << cfg.seeds[i];
  out << "\n";
  out << "threshold = " << real(cfg.threshold) << "\n";
  if (!cfg.checkpoint_path.empty())
    out << "checkpoint = " << cfg.checkpoint_path << "\n";
  out << "test_time_updates = " << (cfg.test_time_updates ? "true" : "false")
      << "\n";
  out << "allow_train_test_overlap = "
      << (cfg.allow_train_test_overlap ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace sdoe
