#pragma once

#include <json.hpp>

#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lprl/rng.hpp"

namespace lprl {

/// MultiDiscrete action layout: one categorical choice per dimension.
struct ActionSpec {
  std::vector<int> cardinalities;

  int dims() const { return static_cast<int>(cardinalities.size()); }

  bool contains(std::span<const int> action) const {
    if (static_cast<int>(action.size()) != dims()) return false;
    for (int i = 0; i < dims(); ++i)
      if (action[i] < 0 || action[i] >= cardinalities[i]) return false;
    return true;
  }
};

using Observation = std::vector<double>;

/// One fully evaluated candidate design: the reward fed to the learner, the
/// embedding that becomes the next state, and an opaque payload kept for the
/// run record (pattern + figures of merit for the PWR case, the raw point for
/// benchmarks).
struct Candidate {
  double objective = 0.0;
  Observation embedding;
  nlohmann::json payload;
  std::map<std::string, double> info;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  std::map<std::string, double> info;
};

/// Global best-ever record shared by all workers of a run. best_objective is
/// monotone nondecreasing; ties keep the first design found so that
/// samples_at_best stays well-defined.
class BestTracker {
 public:
  bool has_best() const { return samples_at_best_ > 0; }
  double best_objective() const { return best_objective_; }
  const Observation& best_observation() const { return best_observation_; }
  const nlohmann::json& best_payload() const { return best_payload_; }
  long long samples_at_best() const { return samples_at_best_; }
  long long samples_seen() const { return samples_seen_; }

  /// Registers one evaluated sample (1-based counting) and keeps the candidate
  /// iff it strictly improves on the incumbent. Returns true on improvement.
  bool record(const Candidate& c) {
    ++samples_seen_;
    if (!has_best() || c.objective > best_objective_) {
      best_objective_ = c.objective;
      best_observation_ = c.embedding;
      best_payload_ = c.payload;
      samples_at_best_ = samples_seen_;
      return true;
    }
    return false;
  }

 private:
  double best_objective_ = -std::numeric_limits<double>::infinity();
  Observation best_observation_;
  nlohmann::json best_payload_;
  long long samples_at_best_ = 0;
  long long samples_seen_ = 0;
};

/// A problem instance. One action builds one complete candidate design; the
/// environment never holds episode state (the EpisodeEnv wrapper does).
/// evaluate() must be deterministic given the rng state and safe to call
/// concurrently on distinct instances.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const ActionSpec& action_spec() const = 0;
  virtual int observation_size() const = 0;
  virtual Candidate evaluate(std::span<const int> action, Rng& rng) = 0;

  /// Fresh copy with independent mutable state, for per-worker ownership.
  virtual std::unique_ptr<Environment> clone() const = 0;
};

/// Episode driver: NF evaluations per episode, restarting from the best design
/// ever found (all-zeros before anything has been evaluated).
class EpisodeEnv {
 public:
  EpisodeEnv(std::unique_ptr<Environment> env, int num_frames);

  Observation reset(const BestTracker& tracker);
  StepResult step(std::span<const int> action, BestTracker& tracker, Rng& rng);

  /// Evaluation half of step(), usable from worker threads; finish_step()
  /// applies the tracker update and episode accounting on the reducing thread.
  Candidate evaluate(std::span<const int> action, Rng& rng);
  StepResult finish_step(Candidate candidate, BestTracker& tracker);

  const Environment& env() const { return *env_; }
  const ActionSpec& action_spec() const { return env_->action_spec(); }
  int observation_size() const { return env_->observation_size(); }
  int num_frames() const { return num_frames_; }
  int steps_in_episode() const { return steps_in_episode_; }

 private:
  std::unique_ptr<Environment> env_;
  int num_frames_;
  int steps_in_episode_ = 0;
};

struct TrajectoryStep {
  Observation observation;
  std::vector<int> action;
  double logprob = 0.0;
  double value = 0.0;
  double reward = 0.0;
};

class PolicyValueNet;

/// Runs one full episode (NF steps) with actions sampled from the policy.
std::vector<TrajectoryStep> run_episode(const PolicyValueNet& policy,
                                        EpisodeEnv& env, BestTracker& tracker,
                                        Rng& rng);

}  // namespace lprl
