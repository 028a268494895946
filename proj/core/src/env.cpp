#include "lprl/env.hpp"

#include "lprl/errors.hpp"
#include "lprl/net.hpp"

namespace lprl {

EpisodeEnv::EpisodeEnv(std::unique_ptr<Environment> env, int num_frames)
    : env_(std::move(env)), num_frames_(num_frames) {
  if (num_frames_ < 1) throw ContractViolation("EpisodeEnv: NF must be >= 1");
}

Observation EpisodeEnv::reset(const BestTracker& tracker) {
  steps_in_episode_ = 0;
  if (tracker.has_best()) return tracker.best_observation();
  return Observation(static_cast<std::size_t>(env_->observation_size()), 0.0);
}

Candidate EpisodeEnv::evaluate(std::span<const int> action, Rng& rng) {
  if (!env_->action_spec().contains(action))
    throw ContractViolation("step: action component out of range");
  return env_->evaluate(action, rng);
}

StepResult EpisodeEnv::finish_step(Candidate candidate, BestTracker& tracker) {
  tracker.record(candidate);
  ++steps_in_episode_;
  StepResult result;
  result.reward = candidate.objective;
  result.observation = std::move(candidate.embedding);
  result.info = std::move(candidate.info);
  result.done = (steps_in_episode_ == num_frames_);
  return result;
}

StepResult EpisodeEnv::step(std::span<const int> action, BestTracker& tracker,
                            Rng& rng) {
  return finish_step(evaluate(action, rng), tracker);
}

std::vector<TrajectoryStep> run_episode(const PolicyValueNet& policy,
                                        EpisodeEnv& env, BestTracker& tracker,
                                        Rng& rng) {
  std::vector<TrajectoryStep> trajectory;
  trajectory.reserve(static_cast<std::size_t>(env.num_frames()));
  Observation obs = env.reset(tracker);
  for (int t = 0; t < env.num_frames(); ++t) {
    auto sampled = policy.sample(obs, rng);
    StepResult sr = env.step(sampled.action, tracker, rng);
    TrajectoryStep step;
    step.observation = obs;
    step.action = std::move(sampled.action);
    step.logprob = sampled.logprob;
    step.value = sampled.value;
    step.reward = sr.reward;
    trajectory.push_back(std::move(step));
    obs = std::move(sr.observation);
  }
  return trajectory;
}

}  // namespace lprl
