#pragma once

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

#include "lprl/pwr/fuel.hpp"
#include "lprl/pwr/geometry.hpp"
#include "lprl/pwr/pattern.hpp"
#include "lprl/pwr/surrogate.hpp"

namespace lprl::pwr {

/// One levelized fuel-cycle cost stage: overnight cost computed per assembly
/// type, discounted over lead/lag time (negative = paid before cycle start).
struct CostStage {
  std::string name;
  double lead_time_years = 0.0;  // T_ik
};

struct EconomicParams {
  double eta = 0.33;          // thermal efficiency
  double k_av = 0.97;         // availability factor
  double t_fo_years = 25.0 / 365.25;  // refueling outage
  double t_mo_years = 5.0 / 365.25;   // maintenance outage
  int n_batchs = 3;
  double discount_rate = 0.07;  // 1/year
  double waba_unit_cost = 1500.0;
  double core_mass_kgu = 88000.0;

  // Pricing inputs for the per-type stage costs.
  double ore_price_per_kgu = 95.0;         // natural U feed, per kg feed
  double conversion_price_per_kgu = 10.0;  // per kg feed
  double swu_price = 95.0;                 // per SWU
  double fabrication_price_per_kgu = 300.0;
  double disposal_price_per_kgu = 600.0;
  double tails_assay = 0.0025;
  double feed_assay = 0.00711;

  std::vector<CostStage> stages = {{"ore_conversion", -2.0},
                                   {"enrichment", -1.5},
                                   {"fabrication", -0.5},
                                   {"disposal", 5.0}};

  void validate() const;
  nlohmann::json to_json() const;
  static EconomicParams from_json(const nlohmann::json& j);

  /// Overnight stage costs c_ik in $/kgU for an assembly of this enrichment,
  /// one entry per stage (feed and separative work from the standard cascade
  /// relations).
  std::vector<double> stage_costs(double enrichment) const;
};

/// One assembly class entering the levelized cost sum.
struct CostClass {
  double alpha = 0.0;                 // proportion of the core
  double burnup = 0.0;                // Bu_i, GWd/tHm (= MWd/kgU)
  std::vector<double> stage_costs;    // c_ik, $/kgU, one per stage
};

/// The levelized fuel-cycle cost in $/MWh:
///   LCOE = EFPY/(eta Kf 24) * r/(1 - exp(-r T_lev))
///          * sum_i alpha_i (1/Bu_i) sum_k C_ik
/// with T_lev = T_cy n_batchs / 365.25, Kf = K_av (1 - (T_FO+T_MO)/T_lev),
/// EFPY = Kf T_lev, C_ik = c_ik exp(-r T_ik), and the averaged WABA
/// contribution Wab * unit_cost * exp(-r T_fabrication) / Mass added to every
/// class's cost sum. r -> 0 degenerates smoothly to the undiscounted form.
double lcoe_core(double cycle_length_efpd, const EconomicParams& econ,
                 std::span<const CostClass> classes, double total_waba_units);

/// Assembles the cost classes from the pattern (grouped by source fresh type,
/// discharge burnups projected from the evaluated cycle) and applies Eq-style
/// levelization above. Throws std::domain_error on nonpositive burnup or
/// cycle length.
double compute_lcoe(const LoadingPattern& pattern, const FomSet& foms,
                    const CoreGeometry& geometry,
                    const BurnedInventory& inventory,
                    const FreshCatalog& catalog, const EconomicParams& econ);

}  // namespace lprl::pwr
