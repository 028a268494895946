#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lprl/pwr/objective.hpp"

using namespace lprl::pwr;

namespace {

FomSet feasible_foms() {
  FomSet f;
  f.cycle_length_efpd = 510.0;
  f.fq = 1.80;
  f.fdh = 1.44;
  f.cb_ppm = 1150.0;
  f.pin_peak_bu = 61.0;
  return f;
}

}  // namespace

TEST_CASE("feasible: objective = -LCOE + 1, exactly") {
  const auto spec = ConstraintSpec::defaults();
  for (double lcoe : {5.569, 5.529, 5.590}) {
    const auto res = objective(feasible_foms(), lcoe, spec, 2, 3);
    CHECK(res.feasible);
    CHECK(res.objective == -lcoe + 1.0);  // bitwise: no penalty terms touched
  }
  // The reference relations: LCOE 5.569 <-> -4.569, 5.529 <-> -4.529.
  CHECK(objective(feasible_foms(), 5.569, spec, 2, 1).objective ==
        doctest::Approx(-4.569).epsilon(1e-12));
  CHECK(objective(feasible_foms(), 5.529, spec, 3, 2).objective ==
        doctest::Approx(-4.529).epsilon(1e-12));
}

TEST_CASE("single violation: quadratic relative penalty with its weight") {
  const auto spec = ConstraintSpec::defaults();
  auto f = feasible_foms();
  f.cycle_length_efpd = 450.0;  // c1 = 500, gamma 25,000
  const auto res = objective(f, 5.5, spec, 2, 2);
  CHECK(!res.feasible);
  const double phi = (450.0 - 500.0) / 500.0 * (450.0 - 500.0) / 500.0;
  CHECK(res.objective == doctest::Approx(-5.5 - 25000.0 * phi).epsilon(1e-12));
  CHECK(25000.0 * phi == doctest::Approx(250.0).epsilon(1e-12));

  int violated = 0;
  for (const auto& ev : res.breakdown) {
    if (!ev.satisfied) {
      ++violated;
      CHECK(ev.name == "cycle_length");
      CHECK(ev.penalty == doctest::Approx(250.0).epsilon(1e-12));
    } else {
      CHECK(ev.penalty == 0.0);
    }
  }
  CHECK(violated == 1);
}

TEST_CASE("feasibility coupling: objective > -LCOE iff all constraints hold") {
  const auto spec = ConstraintSpec::defaults();
  const double lcoe = 5.5;
  CHECK(objective(feasible_foms(), lcoe, spec, 2, 2).objective > -lcoe);
  auto f = feasible_foms();
  f.fq = 1.86;
  CHECK(objective(f, lcoe, spec, 2, 2).objective < -lcoe);
}

TEST_CASE("two-sided batch constraints activate on both sides") {
  const auto spec = ConstraintSpec::defaults();
  // c6: 2 <= enrichments <= 3; c7: 1 <= BP patterns <= 3; weight 1,000.
  const auto too_few = objective(feasible_foms(), 5.5, spec, 1, 2);
  CHECK(!too_few.feasible);
  const double phi_lo = (1.0 - 2.0) / 2.0 * (1.0 - 2.0) / 2.0;
  CHECK(too_few.objective ==
        doctest::Approx(-5.5 - 1000.0 * phi_lo).epsilon(1e-12));

  const auto too_many = objective(feasible_foms(), 5.5, spec, 4, 2);
  CHECK(!too_many.feasible);
  const double phi_hi = (4.0 - 3.0) / 3.0 * (4.0 - 3.0) / 3.0;
  CHECK(too_many.objective ==
        doctest::Approx(-5.5 - 1000.0 * phi_hi).epsilon(1e-12));

  CHECK(objective(feasible_foms(), 5.5, spec, 2, 4).feasible == false);
  CHECK(objective(feasible_foms(), 5.5, spec, 2, 1).feasible == true);
}

TEST_CASE("scaling the weights scales only the penalty term") {
  auto spec = ConstraintSpec::defaults();
  auto f = feasible_foms();
  f.fq = 2.0;
  f.cb_ppm = 1300.0;
  const double lcoe = 5.6;
  const auto base = objective(f, lcoe, spec, 2, 2);
  spec.set_fom_weights(50000.0);
  const auto doubled = objective(f, lcoe, spec, 2, 2);
  CHECK(doubled.objective - (-lcoe) ==
        doctest::Approx(2.0 * (base.objective - (-lcoe))).epsilon(1e-12));
  // Feasible patterns are untouched by reweighting.
  CHECK(objective(feasible_foms(), lcoe, spec, 2, 2).objective ==
        objective(feasible_foms(), lcoe, ConstraintSpec::defaults(), 2, 2)
            .objective);
}

TEST_CASE("normalized distance: zero when feasible, table-range terms otherwise") {
  const auto spec = ConstraintSpec::defaults();
  CHECK(normalized_distance(feasible_foms(), spec) == 0.0);

  // Fq violated at the upper range bound: (2.911 - 1.85)/(2.911 - 1.768).
  auto f = feasible_foms();
  f.fq = 2.911;
  const double expect = (2.911 - 1.85) / (2.911 - 1.768);
  CHECK(normalized_distance(f, spec) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(normalized_distance(f, spec) ==
        doctest::Approx(0.9282589).epsilon(1e-6));

  // Two violations: root-sum-square.
  f.cb_ppm = 1300.0;
  const double cb_term = (1300.0 - 1200.0) / (1405.1 - 952.7);
  CHECK(normalized_distance(f, spec) ==
        doctest::Approx(std::sqrt(expect * expect + cb_term * cb_term))
            .epsilon(1e-12));

  // The batch constraints never enter the distance.
  auto spec2 = spec;
  const auto res = objective(f, 5.5, spec2, 9, 9);
  CHECK(!res.feasible);
  CHECK(normalized_distance(f, spec2) ==
        doctest::Approx(std::sqrt(expect * expect + cb_term * cb_term))
            .epsilon(1e-12));
}

TEST_CASE("constraint spec JSON round-trips") {
  const auto spec = ConstraintSpec::defaults();
  const auto j = spec.to_json();
  const auto spec2 = ConstraintSpec::from_json(j);
  CHECK(spec2.to_json() == j);
  REQUIRE(spec2.constraints.size() == 7);
  CHECK(spec2.constraints[0].lower == 500.0);
  CHECK(spec2.constraints[1].upper == 1.85);
  CHECK(spec2.constraints[5].lower == 2.0);
  CHECK(spec2.constraints[5].upper == 3.0);
}
