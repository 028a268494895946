#pragma once

#include <memory>
#include <vector>

#include "lprl/env.hpp"
#include "lprl/pwr/env.hpp"
#include "lprl/rng.hpp"

namespace lprl_test {

/// Deterministic environment on a tiny integer grid: reward is the negative
/// squared distance to a target action, embedding is the scaled action. Keeps
/// PPO tests fast and independent of the physics code.
class QuadraticEnv : public lprl::Environment {
 public:
  QuadraticEnv(std::vector<int> cardinalities, std::vector<int> target)
      : target_(std::move(target)) {
    spec_.cardinalities = std::move(cardinalities);
  }

  const lprl::ActionSpec& action_spec() const override { return spec_; }
  int observation_size() const override { return spec_.dims(); }

  lprl::Candidate evaluate(std::span<const int> action, lprl::Rng&) override {
    lprl::Candidate c;
    double f = 0.0;
    c.embedding.resize(static_cast<std::size_t>(spec_.dims()));
    for (int i = 0; i < spec_.dims(); ++i) {
      const double d = action[i] - target_[static_cast<std::size_t>(i)];
      f += d * d;
      c.embedding[static_cast<std::size_t>(i)] =
          static_cast<double>(action[i]) / (spec_.cardinalities[i] - 1);
    }
    c.objective = -f;
    c.payload = {{"action", std::vector<int>(action.begin(), action.end())}};
    return c;
  }

  std::unique_ptr<lprl::Environment> clone() const override {
    return std::make_unique<QuadraticEnv>(*this);
  }

 private:
  lprl::ActionSpec spec_;
  std::vector<int> target_;
};

/// 21-assembly toy core (radius 2, shape {2,2,1}) with 4 decision locations:
/// fresh at the diagonal (1,1), two once-burned line locations (1,0), (2,0),
/// and a twice-burned interior location (2,1). The two once-burned groups get
/// distinct source types so position+composition identify a pattern.
inline lprl::pwr::PwrProblem toy_problem() {
  using namespace lprl::pwr;
  std::vector<DecisionLocation> locations;
  DecisionLocation interior;
  interior.rep = {2, 1};
  interior.klass = LocationClass::Interior;
  interior.role = Role::Twice;
  locations.push_back(interior);
  DecisionLocation diag;
  diag.rep = {1, 1};
  diag.klass = LocationClass::Line;
  diag.role = Role::Fresh;
  locations.push_back(diag);
  DecisionLocation ax1;
  ax1.rep = {1, 0};
  ax1.klass = LocationClass::Line;
  ax1.role = Role::Once;
  locations.push_back(ax1);
  DecisionLocation ax2;
  ax2.rep = {2, 0};
  ax2.klass = LocationClass::Line;
  ax2.role = Role::Once;
  locations.push_back(ax2);
  std::vector<int> shape = {2, 2, 1};
  for (auto& loc : locations) {
    auto in = [&](Coord c) {
      const int r = std::abs(c.row);
      return r < static_cast<int>(shape.size()) &&
             std::abs(c.col) <= shape[static_cast<std::size_t>(r)];
    };
    const Coord p = loc.rep;
    loc.periphery = !in({p.row + 1, p.col}) || !in({p.row - 1, p.col}) ||
                    !in({p.row, p.col + 1}) || !in({p.row, p.col - 1});
  }
  CoreGeometry geometry(shape, std::move(locations), false, 1);

  FreshCatalog catalog = FreshCatalog::default_catalog();
  std::vector<BurnedGroup> groups;
  BurnedGroup g0;
  g0.id = 0;
  g0.burn_class = Role::Once;
  g0.location_class = LocationClass::Line;
  g0.boc_burnup = 20.0;
  g0.boc_kinf_proxy = 0.05;
  g0.source_fresh_type = 0;  // 4.00 w/o
  g0.member_ids = {0, 1, 2, 3};
  groups.push_back(g0);
  BurnedGroup g1 = g0;
  g1.id = 1;
  g1.boc_burnup = 24.0;
  g1.boc_kinf_proxy = 0.08;
  g1.source_fresh_type = 7;  // 4.45 w/o
  g1.member_ids = {4, 5, 6, 7};
  groups.push_back(g1);
  BurnedGroup g2;
  g2.id = 2;
  g2.burn_class = Role::Twice;
  g2.location_class = LocationClass::Interior;
  g2.boc_burnup = 42.0;
  g2.boc_kinf_proxy = -0.1;
  g2.source_fresh_type = 13;
  g2.member_ids = {8, 9, 10, 11, 12, 13, 14, 15};
  groups.push_back(g2);
  BurnedInventory inventory(std::move(groups));

  PwrProblem problem{std::move(geometry),  std::move(catalog),
                     std::move(inventory), SurrogateParams{},
                     EconomicParams{},     ConstraintSpec::defaults(),
                     lprl::pwr::EmbeddingRanges{}, std::nullopt};
  return problem;
}

}  // namespace lprl_test
