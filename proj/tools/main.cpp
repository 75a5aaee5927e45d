#include "sdoe/cli/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Sequential design-of-experiments toolkit: policy-driven and "
               "Bayesian-optimization batch sampling under a shared budget"};
  app.require_subcommand(1);

  std::string config_path;
  std::string seed_csv;
  const char* env_out = std::getenv("SDOE_OUT_DIR");
  std::string out_dir = env_out ? env_out : ".";

  const char* descriptions[] = {
      "Train a sampling policy on a synthetic function class",
      "Run a trained policy on a test objective",
      "Run the batch Bayesian-optimization baseline",
      "Run policy and baseline side by side and summarize",
  };
  const char* names[] = {"train", "deploy", "baseline", "compare"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "experiment config file")
        ->required();
    sub->add_option("--seed", seed_csv,
                    "comma-separated seed list (overrides the config)");
    sub->add_option("--out", out_dir,
                    "output directory (default: $SDOE_OUT_DIR or '.')");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string sub_name = app.get_subcommands().front()->get_name();
  try {
    sdoe::ExperimentConfig cfg =
        sdoe::load_config(config_path, sdoe::parse_task(sub_name));
    if (!seed_csv.empty()) cfg.seeds = sdoe::parse_seed_list(seed_csv);
    return sdoe::run_experiment(cfg, out_dir);
  } catch (const sdoe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sdoe::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
