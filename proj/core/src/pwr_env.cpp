#include "lprl/pwr/env.hpp"

#include <atomic>
#include <cmath>

#include "lprl/errors.hpp"

namespace lprl::pwr {

PwrProblem PwrProblem::defaults(std::uint64_t inventory_seed) {
  CoreGeometry geometry = CoreGeometry::default_w193();
  FreshCatalog catalog = FreshCatalog::default_catalog();
  BurnedInventory inventory =
      BurnedInventory::synthesize(geometry, catalog, inventory_seed);
  PwrProblem p{std::move(geometry), std::move(catalog), std::move(inventory),
               SurrogateParams{}, EconomicParams{}, ConstraintSpec::defaults(),
               EmbeddingRanges{}, std::nullopt};
  p.validate();
  return p;
}

void PwrProblem::validate() const {
  if (catalog.size() != 24)
    throw ConfigError("fresh catalog must contain exactly 24 types");
  inventory.validate_against(geometry);
  surrogate.validate();
  economics.validate();
  if (geometry.center_fresh_type() < 0 ||
      geometry.center_fresh_type() >= catalog.size())
    throw ConfigError("geometry center fresh type outside the catalog");
  if (geometry.center_crd() &&
      catalog.type(geometry.center_fresh_type()).waba_rods > 0)
    throw ConfigError("center assembly holds WABA under a control rod");
  if (external && external->command.empty())
    throw ConfigError("external evaluator command is empty");
}

PwrEnvironment::PwrEnvironment(std::shared_ptr<const PwrProblem> problem)
    : problem_(std::move(problem)),
      instance_counter_(std::make_shared<std::atomic<int>>(0)) {
  problem_->validate();
  action_spec_ =
      build_action_spec(problem_->geometry, problem_->inventory, problem_->catalog);
  if (problem_->external) {
    const int instance = instance_counter_->fetch_add(1);
    evaluator_ = std::make_unique<ExternalEvaluator>(
        problem_->external->command, problem_->external->workdir,
        problem_->external->timeout_seconds, problem_->external->run_id,
        instance);
  }
}

int PwrEnvironment::observation_size() const {
  return problem_->geometry.num_locations() * kEmbeddingWidth;
}

ObjectiveResult PwrEnvironment::score(const LoadingPattern& pattern,
                                      const FomSet& foms) const {
  const double lcoe = compute_lcoe(pattern, foms, problem_->geometry,
                                   problem_->inventory, problem_->catalog,
                                   problem_->economics);
  const auto [enr_count, bp_count] =
      count_batches(pattern, problem_->geometry, problem_->catalog);
  return objective(foms, lcoe, problem_->constraints, enr_count, bp_count);
}

Candidate PwrEnvironment::evaluate(std::span<const int> action, Rng& rng) {
  const auto& pb = *problem_;
  LoadingPattern pattern =
      decode_action(action, pb.geometry, pb.inventory, pb.catalog, rng);

  FomSet foms;
  if (evaluator_) {
    foms = evaluator_->evaluate(pattern, pb.geometry, pb.inventory, pb.catalog,
                                ++local_samples_);
  } else {
    foms = surrogate_evaluate(pattern, pb.geometry, pb.inventory, pb.catalog,
                              pb.surrogate);
  }

  const ObjectiveResult result = score(pattern, foms);
  if (!std::isfinite(result.objective))
    throw NumericError("objective is not finite");

  Candidate c;
  c.objective = result.objective;
  c.embedding = embed(pattern, foms, pb.geometry, pb.inventory, pb.catalog,
                      pb.embedding);
  c.payload = {{"pattern", pattern_to_json(pattern, pb.geometry, pb.inventory,
                                           pb.catalog)},
               {"foms", foms.to_json()},
               {"lcoe", result.lcoe},
               {"objective", result.objective},
               {"feasible", result.feasible}};

  c.info["objective"] = result.objective;
  c.info["lcoe"] = result.lcoe;
  c.info["feasible"] = result.feasible ? 1.0 : 0.0;
  c.info["distance"] = normalized_distance(foms, pb.constraints);
  for (const auto& ev : result.breakdown) {
    c.info[ev.name] = ev.value;
    c.info["penalty_" + ev.name] = ev.penalty;
  }
  return c;
}

PwrEnvironment::PwrEnvironment(const PwrEnvironment& other)
    : problem_(other.problem_),
      action_spec_(other.action_spec_),
      instance_counter_(other.instance_counter_) {
  if (problem_->external) {
    const int instance = instance_counter_->fetch_add(1);
    evaluator_ = std::make_unique<ExternalEvaluator>(
        problem_->external->command, problem_->external->workdir,
        problem_->external->timeout_seconds, problem_->external->run_id,
        instance);
  }
}

std::unique_ptr<Environment> PwrEnvironment::clone() const {
  return std::unique_ptr<Environment>(new PwrEnvironment(*this));
}

}  // namespace lprl::pwr
