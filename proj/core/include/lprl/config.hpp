#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lprl/env.hpp"
#include "lprl/ppo.hpp"

namespace lprl {

struct PwrConfig {
  std::optional<std::string> geometry_file;
  std::optional<std::string> catalog_file;
  std::optional<std::string> inventory_file;
  std::optional<std::string> economics_file;
  std::optional<std::string> surrogate_file;
  std::optional<std::string> constraints_file;
  std::uint64_t inventory_seed = 0;
  std::optional<double> weights;  // uniform c1..c5 penalty weight override
  std::optional<std::string> evaluator_command;
  double evaluator_timeout_seconds = 600.0;
};

struct BenchmarkConfig {
  std::string function = "sphere";
  int nx = 2;
  std::uint64_t instance_seed = 0;
  std::optional<std::string> shift_file;
  std::optional<std::string> rotation_file;
};

/// Fully resolved run configuration. Loading validates everything — all
/// referenced files must exist and parse — before any compute starts.
struct RunConfig {
  std::string environment = "benchmark";  // "pwr" | "benchmark"
  PwrConfig pwr;
  BenchmarkConfig benchmark;
  HyperParams hp;
  std::vector<std::uint64_t> seeds = {1};
  int n_generations = 100;
  double max_seconds = 0.0;  // 0 = no wall-clock cap

  nlohmann::json to_json() const;  // canonical snapshot, byte-stable
  static RunConfig from_json(const nlohmann::json& j,
                             const std::string& base_dir);
  static RunConfig load(const std::string& path);

  /// Builds the environment prototype; throws ConfigError before any
  /// evaluator call if anything is missing or malformed. run_dir seeds the
  /// external evaluator's working directory and run id.
  std::unique_ptr<Environment> build_environment(
      const std::string& run_dir) const;

  /// Sets a sweepable field by name ("ent_coef", "n_steps", "NF", "weights",
  /// ...). Throws ConfigError on unknown names or unparsable values.
  void set_parameter(const std::string& name, const std::string& value);
};

}  // namespace lprl
