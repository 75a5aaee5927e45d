#include "sdoe/trainer/trainer.hpp"

#include <cstdio>
#include <fstream>

namespace sdoe {

SyntheticObjective sample_training_function(const FunctionClassSpec& spec,
                                            Rng& rng) {
  const BenchFunction& fn = bench_function(spec.base);
  if (spec.shift_range < 0)
    throw ContractError("shift_range must be >= 0");
  Vec shift = Vec::Zero(fn.dim);
  for (int j = 0; j < fn.dim; ++j)
    shift[j] = spec.shift_range == 0.0
                   ? 0.0
                   : rng.uniform(-spec.shift_range, spec.shift_range);
  return SyntheticObjective(fn, shift);
}

std::pair<EpisodeRecord, std::vector<SupervisedPair>> run_training_episode(
    Objective& objective, const PolicyNet& net, const EnvConfig& env_cfg,
    const PolicyConfig& policy_cfg, Rng& rng) {
  const int m = env_cfg.num_batches;
  const int n = env_cfg.batch_size;
  const int d = objective.dim();
  if (net.input_dim() != n * d + 2 || net.action_dim() != n * d)
    throw ContractError("net shape does not match environment dimensions");

  Environment env(objective, env_cfg);
  EpisodeRecord rec;
  rec.states.reserve(static_cast<size_t>(m) + 1);
  rec.state_vecs.reserve(static_cast<size_t>(m) + 1);
  rec.actions.reserve(static_cast<size_t>(m));
  rec.emitted.reserve(static_cast<size_t>(m));
  rec.rewards.resize(m);

  EnvState state = env.reset(rng);
  rec.states.push_back(state);
  rec.state_vecs.push_back(encode_state(state));

  for (int t = 0; t < m; ++t) {
    const PolicyParams params =
        net.forward(rec.state_vecs.back(), policy_cfg.variance_floor,
                    policy_cfg.variance_cap);
    const Vec action =
        sample_averaged_action(params, policy_cfg.sample_count, rng);
    auto [next, reward] = env.step(reshape_batch(action, n, d), rng);
    rec.emitted.push_back(params);
    rec.actions.push_back(action);
    rec.rewards[t] = reward;
    rec.states.push_back(next);
    rec.state_vecs.push_back(encode_state(next));
    state = next;
  }
  rec.trace = env.trace();
  rec.episode_return = cumulative_reward(rec.rewards, env_cfg.discount);

  std::vector<SupervisedPair> pairs;
  pairs.reserve(static_cast<size_t>(m));
  for (int t = 0; t < m; ++t) {
    const double weight = reward_to_go(rec.rewards, t, env_cfg.discount);
    PolicyParams target = reinforce_param_update(
        rec.emitted[static_cast<size_t>(t)],
        rec.actions[static_cast<size_t>(t)], weight, policy_cfg.reinforce_lr,
        policy_cfg.variance_update, policy_cfg.variance_floor,
        policy_cfg.variance_cap);
    pairs.push_back(
        SupervisedPair{rec.state_vecs[static_cast<size_t>(t)], std::move(target)});
  }
  return {std::move(rec), std::move(pairs)};
}

namespace {

// Supervised targets live in the net's raw output space: means verbatim,
// variances pulled back through the softplus.
Vec raw_target(const PolicyParams& p) {
  const Eigen::Index a = p.means.size();
  Vec t(2 * a);
  t.head(a) = p.means;
  for (Eigen::Index i = 0; i < a; ++i)
    t[a + i] = inv_softplus(p.variances[i]);
  return t;
}

void fit_on_pairs(PolicyNet& net, const std::vector<SupervisedPair>& pairs,
                  const PolicyConfig& pc) {
  std::vector<Vec> inputs, targets;
  inputs.reserve(pairs.size());
  targets.reserve(pairs.size());
  for (const SupervisedPair& p : pairs) {
    inputs.push_back(p.state);
    targets.push_back(raw_target(p.target));
  }
  fit_net(net, inputs, targets, pc.supervised_epochs, pc.supervised_lr);
}

}  // namespace

TrainResult train_policy(const FunctionClassSpec& spec, const TrainConfig& tc) {
  if (tc.num_functions < 1 || tc.episodes_per_function < 1)
    throw ContractError("training loop counts must be >= 1");
  const BenchFunction& fn = bench_function(spec.base);
  const int action = fn.dim * tc.env.batch_size;

  Rng rng(tc.seed);
  TrainResult result;
  result.net = PolicyNet(action + 2, action);
  result.net.init_weights(rng);

  for (int fi = 0; fi < tc.num_functions; ++fi) {
    SyntheticObjective objective = sample_training_function(spec, rng);
    for (int ep = 0; ep < tc.episodes_per_function; ++ep) {
      auto [rec, pairs] =
          run_training_episode(objective, result.net, tc.env, tc.policy, rng);
      fit_on_pairs(result.net, pairs, tc.policy);
      result.log.push_back(EpisodeLogRow{fi, ep, rec.episode_return,
                                         rec.trace.rows.back().best_observed});
    }
  }
  return result;
}

ConvergenceTrace deploy_policy(PolicyNet& net, Objective& objective,
                               const EnvConfig& env_cfg,
                               const PolicyConfig& policy_cfg, Rng& rng,
                               bool update_at_test_time) {
  auto [rec, pairs] =
      run_training_episode(objective, net, env_cfg, policy_cfg, rng);
  if (update_at_test_time) fit_on_pairs(net, pairs, policy_cfg);
  return rec.trace;
}

void write_training_log(const std::vector<EpisodeLogRow>& log,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open '" + path + "' for writing");
  out << "function_index,episode_index,return,final_best_observed\n";
  char buf[96];
  for (const EpisodeLogRow& row : log) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", row.function_index,
                  row.episode_index, row.episode_return,
                  row.final_best_observed);
    out << buf;
  }
  if (!out) throw ContractError("write failed for '" + path + "'");
}

}  // namespace sdoe
