#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>

#include "lprl/env.hpp"
#include "lprl/pwr/economics.hpp"
#include "lprl/pwr/embedding.hpp"
#include "lprl/pwr/external.hpp"
#include "lprl/pwr/fuel.hpp"
#include "lprl/pwr/geometry.hpp"
#include "lprl/pwr/objective.hpp"
#include "lprl/pwr/pattern.hpp"
#include "lprl/pwr/surrogate.hpp"

namespace lprl::pwr {

struct ExternalEvaluatorConfig {
  std::string command;
  std::string workdir = "evaluator";
  double timeout_seconds = 600.0;
  std::string run_id = "run";
};

/// Immutable problem definition shared by all workers of a run.
struct PwrProblem {
  CoreGeometry geometry;
  FreshCatalog catalog;
  BurnedInventory inventory;
  SurrogateParams surrogate;
  EconomicParams economics;
  ConstraintSpec constraints;
  EmbeddingRanges embedding;
  std::optional<ExternalEvaluatorConfig> external;  // surrogate when absent

  /// Default synthetic problem: 193-assembly map, 24-type catalog, seeded
  /// equilibrium inventory.
  static PwrProblem defaults(std::uint64_t inventory_seed = 0);

  void validate() const;
};

/// The loading-pattern environment: decode with structural constraints by
/// construction, evaluate (synthetic surrogate or external code), price,
/// penalize, embed.
class PwrEnvironment : public Environment {
 public:
  explicit PwrEnvironment(std::shared_ptr<const PwrProblem> problem);

  const ActionSpec& action_spec() const override { return action_spec_; }
  int observation_size() const override;
  Candidate evaluate(std::span<const int> action, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override;

  const PwrProblem& problem() const { return *problem_; }

  /// Full evaluation chain on an already decoded pattern.
  ObjectiveResult score(const LoadingPattern& pattern, const FomSet& foms) const;

 private:
  PwrEnvironment(const PwrEnvironment& other);  // used by clone()

  std::shared_ptr<const PwrProblem> problem_;
  ActionSpec action_spec_;
  std::shared_ptr<std::atomic<int>> instance_counter_;
  std::unique_ptr<ExternalEvaluator> evaluator_;  // null -> surrogate
  long long local_samples_ = 0;
};

}  // namespace lprl::pwr
