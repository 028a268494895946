#pragma once

#include <json.hpp>

#include <vector>

#include "lprl/pwr/fuel.hpp"
#include "lprl/pwr/geometry.hpp"
#include "lprl/pwr/pattern.hpp"

namespace lprl::pwr {

/// Evaluator outputs. Per-assembly fields are aligned with the decision
/// locations (array order), with one extra trailing entry for the center; each
/// value is the common value of the whole symmetry orbit.
struct FomSet {
  double cycle_length_efpd = 0.0;
  double fq = 0.0;
  double fdh = 0.0;
  double cb_ppm = 0.0;
  double pin_peak_bu = 0.0;
  std::vector<double> rpf;
  std::vector<double> fdh_assembly;
  std::vector<double> eoc_exposure;

  nlohmann::json to_json() const;
  static FomSet from_json(const nlohmann::json& j);
};

/// Synthetic stand-in for a nodal depletion code. Deterministic, total over
/// structurally valid patterns, and smooth in composition so the learner has
/// gradient to follow: per-assembly reactivity from enrichment/burnup/BP
/// worth, powers from reactivity smoothed by a nearest-neighbor diffusion
/// kernel with edge leakage, FOMs affine in the resulting fields.
struct SurrogateParams {
  double kinf_base = 0.20;
  double kinf_per_enrichment = 0.12;   // per w/o around 4.45
  double kinf_ifba_worth = 0.05;       // at full 156-rod load
  double kinf_waba_worth = 0.035;      // at full 24-rodlet load
  double kinf_per_burnup = 0.0075;     // per GWd/tHm
  double bp_cycle_recovery = 0.5;      // fraction of BP worth burned out
  double power_gain = 2.2;             // exp tilt from reactivity
  int smoothing_iterations = 3;
  double smoothing_weight = 0.55;
  double edge_albedo = 0.5;            // neighbor weight past the core edge
  double axial_peaking = 1.33;         // Fq = axial * peak rpf
  double rod_peaking = 1.045;          // FdH = rod * peak rpf
  double cycle_intercept_efpd = 420.0;
  double cycle_per_rho = 2600.0;
  double boron_intercept_ppm = 950.0;
  double boron_per_rho = 9000.0;
  double specific_power_gwd_per_efpd = 0.0387;  // core-average burnup rate
  double pin_peaking = 1.03;

  void validate() const;
  nlohmann::json to_json() const;
  static SurrogateParams from_json(const nlohmann::json& j);
};

FomSet surrogate_evaluate(const LoadingPattern& pattern,
                          const CoreGeometry& geometry,
                          const BurnedInventory& inventory,
                          const FreshCatalog& catalog,
                          const SurrogateParams& params);

}  // namespace lprl::pwr
