#pragma once

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lprl/env.hpp"
#include "lprl/net.hpp"

namespace lprl {

struct HyperParams {
  int n_steps = 4;
  int ncores = 32;
  int num_frames = 1;  // NF: designs generated per episode
  double ent_coef = 0.001;
  double vf_coef = 1.0;
  int noptepochs = 10;
  int nminibatches = 4;
  double clip_epsilon = 0.2;
  double gamma = 0.99;
  double lambda_gae = 0.95;
  double learning_rate = 0.00025;
  double max_grad_norm = 0.5;
  long long total_samples = 40000;
  std::uint64_t seed = 0;
  int hidden_width = 64;
  int hidden_depth = 2;
  bool normalize_advantage = true;
  bool anneal_lr = false;
  int rollout_threads = 1;  // >1 evaluates workers concurrently, same results

  void validate() const;  // throws ConfigError on any bad field
};

struct TrainStats {
  double approx_kl = 0.0;
  double clipfrac = 0.0;
  double entropy = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
};

/// Transitions from one collect phase: ncores x n_steps rows, worker-major.
struct RolloutBuffer {
  int ncores = 0;
  int n_steps = 0;
  int obs_len = 0;
  int action_dims = 0;

  std::vector<double> observations;  // size x obs_len
  std::vector<int> actions;          // size x action_dims
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<double> logprobs;  // old-policy log-probabilities
  std::vector<unsigned char> dones;
  std::vector<double> advantages;
  std::vector<double> returns;
  std::vector<double> bootstrap_values;  // per worker, value after last step

  RolloutBuffer() = default;
  RolloutBuffer(int ncores, int n_steps, int obs_len, int action_dims);

  int size() const { return ncores * n_steps; }
  int index(int worker, int step) const { return worker * n_steps + step; }
  std::span<const double> obs_row(int i) const {
    return {observations.data() + static_cast<std::size_t>(i) * obs_len,
            static_cast<std::size_t>(obs_len)};
  }
  std::span<const int> action_row(int i) const {
    return {actions.data() + static_cast<std::size_t>(i) * action_dims,
            static_cast<std::size_t>(action_dims)};
  }
};

/// GAE over each worker's chronological sequence. Episode ends reset the
/// recursion; the final transition bootstraps from bootstrap_values when the
/// episode is still open. For one-step episodes the advantage is exactly
/// reward - value, independent of gamma and lambda.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda_gae);

/// A view of the minibatch rows ppo_loss consumes. advantages carries the
/// (possibly standardized) advantage aligned with indices.
struct MinibatchView {
  const RolloutBuffer* buffer = nullptr;
  std::span<const int> indices;
  std::span<const double> advantages;
};

struct LossResult {
  double loss = 0.0;
  TrainStats stats;
};

/// Clipped-surrogate PPO loss with value and entropy terms:
///   loss = -E[min(r A, g*(eps, A))] + vf_coef E[(V - R)^2] - ent_coef E[H]
/// where g*(eps, A) = (1 + eps) A for A >= 0 and (1 - eps) A otherwise.
/// Accumulates dloss/dparams into grad (must be zeroed by the caller).
/// Throws NumericError (with minibatch statistics) if the loss is not finite.
LossResult ppo_loss(const PolicyValueNet& net, const MinibatchView& mb,
                    double clip_epsilon, double vf_coef, double ent_coef,
                    std::span<double> grad);

/// One PPO update: noptepochs passes over nminibatches shuffled minibatches,
/// gradient clipped to max_grad_norm, parameters advanced by Adam. Returns
/// stats averaged over the last epoch.
TrainStats update(PolicyValueNet& net, AdamOptimizer& adam,
                  const RolloutBuffer& buffer, const HyperParams& hp,
                  double learning_rate, Rng& shuffle_rng);

/// Per-worker rollout state owned by the train loop.
struct Worker {
  EpisodeEnv env;
  Rng policy_rng;
  Rng env_rng;
  Observation obs;
  double episode_reward_sum = 0.0;
  double episode_reward_max = 0.0;
  int episode_steps = 0;

  Worker(std::unique_ptr<Environment> e, int num_frames)
      : env(std::move(e), num_frames) {}
};

struct EpisodeRecord {
  double mean_reward = 0.0;
  double max_reward = 0.0;
  int length = 0;
  long long end_sample = 0;
};

/// Everything a finished (or aborted) training run leaves behind.
struct RunRecord {
  nlohmann::json config_snapshot;
  std::uint64_t seed = 0;
  std::vector<double> step_rewards;  // deterministic (update, step, worker) order
  std::vector<EpisodeRecord> episodes;
  std::vector<TrainStats> update_stats;
  double best_objective = 0.0;
  long long samples_at_best = 0;
  long long total_samples = 0;
  Observation best_observation;
  nlohmann::json best_payload;
  bool aborted = false;
  std::string abort_reason;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

/// Collects ncores x n_steps transitions in lockstep. Worker evaluations for a
/// step may run concurrently (hp.rollout_threads); tracker updates, buffer
/// writes, and episode resets are applied in worker-index order afterwards, so
/// results are identical for any thread count.
RolloutBuffer collect_rollout(const PolicyValueNet& net,
                              std::vector<Worker>& workers,
                              BestTracker& tracker, const HyperParams& hp,
                              RunRecord* record);

/// Full training loop: collect -> GAE -> update until total_samples
/// evaluations are consumed (floor(total_samples / (ncores * n_steps))
/// updates). Fills record incrementally so a partial record survives
/// mid-run errors; rethrows the original error after marking the record.
void train(const Environment& prototype, const HyperParams& hp,
           RunRecord& record, BestTracker* tracker_out = nullptr);

}  // namespace lprl
