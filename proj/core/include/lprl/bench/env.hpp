#pragma once

#include "lprl/bench/functions.hpp"
#include "lprl/env.hpp"

namespace lprl::bench {

/// Environment over a benchmark instance: one action = one grid point, with
/// per-dimension cardinality 2B+1 offset-mapped to [-B, B]. The reward is -f
/// (the episode driver maximizes); reports therefore display the objective as
/// -reward so curves converge upward to f*.
class BenchmarkEnvironment : public Environment {
 public:
  explicit BenchmarkEnvironment(BenchmarkSpec spec);

  const ActionSpec& action_spec() const override { return action_spec_; }
  int observation_size() const override { return spec_.nx; }
  Candidate evaluate(std::span<const int> action, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override;

  const BenchmarkSpec& spec() const { return spec_; }

 private:
  BenchmarkSpec spec_;
  ActionSpec action_spec_;
};

}  // namespace lprl::bench
