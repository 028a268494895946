#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "lprl/pwr/surrogate.hpp"

namespace lprl::pwr {

/// One operational/safety constraint: a lower and/or upper bound on a figure
/// of merit, a penalty weight, and the normalization range used by the
/// feasibility distance.
struct Constraint {
  std::string name;
  std::optional<double> lower;
  std::optional<double> upper;
  double weight = 25000.0;
  double range_lo = 0.0;  // normalization bounds for the distance measure
  double range_hi = 1.0;

  bool satisfied(double x) const {
    return (!lower || x >= *lower) && (!upper || x <= *upper);
  }
  /// The bound being violated (nearest side), if any.
  std::optional<double> violated_bound(double x) const {
    if (lower && x < *lower) return lower;
    if (upper && x > *upper) return upper;
    return std::nullopt;
  }
};

struct ConstraintSpec {
  std::vector<Constraint> constraints;  // c1..c7 by default

  /// Paper defaults: c1 cycle length >= 500 EFPD, c2 Fq <= 1.85,
  /// c3 FdH <= 1.45, c4 Cb <= 1200 ppm, c5 pin peak Bu <= 62 GWd/tHm,
  /// 2 <= c6 <= 3 enrichments, 1 <= c7 <= 3 BP patterns; weights 25,000
  /// except 1,000 for c6/c7; normalization ranges from observed FOM spans.
  static ConstraintSpec defaults();

  nlohmann::json to_json() const;
  static ConstraintSpec from_json(const nlohmann::json& j);

  /// Uniform reweighting of the FOM constraints c1..c5 (the "weights" knob).
  void set_fom_weights(double w);
};

struct ConstraintEvaluation {
  std::string name;
  double value = 0.0;
  bool satisfied = true;
  double phi = 0.0;      // ((x - c)/c)^2 when violated, else 0
  double penalty = 0.0;  // weight * phi
};

struct ObjectiveResult {
  double objective = 0.0;
  double lcoe = 0.0;
  bool feasible = false;
  std::vector<ConstraintEvaluation> breakdown;
};

/// Penalty-shaped maximization objective:
///   f = -LCOE - sum_i gamma_i Phi_i + 1[all constraints satisfied]
/// Phi_i activates only on violation in the constraint's stated direction.
ObjectiveResult objective(const FomSet& foms, double lcoe,
                          const ConstraintSpec& spec, int enrichment_count,
                          int bp_count);

/// Normalized distance to the feasible region over the FOM constraints c1..c5:
/// root-sum-square of (x_i - c_i)/(range_hi - range_lo) over violated terms.
double normalized_distance(const FomSet& foms, const ConstraintSpec& spec);

}  // namespace lprl::pwr
