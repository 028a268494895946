#include "lprl/pwr/economics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "lprl/errors.hpp"

namespace lprl::pwr {

void EconomicParams::validate() const {
  if (eta <= 0.0 || eta > 1.0) throw ConfigError("economics: eta must be in (0, 1]");
  if (discount_rate < 0.0) throw ConfigError("economics: discount rate must be >= 0");
  if (n_batchs < 1) throw ConfigError("economics: n_batchs must be >= 1");
  if (core_mass_kgu <= 0.0) throw ConfigError("economics: core mass must be positive");
  if (ore_price_per_kgu < 0.0 || conversion_price_per_kgu < 0.0 ||
      swu_price < 0.0 || fabrication_price_per_kgu < 0.0 ||
      disposal_price_per_kgu < 0.0 || waba_unit_cost < 0.0)
    throw ConfigError("economics: costs must be >= 0");
  if (stages.empty()) throw ConfigError("economics: no cost stages");
  if (tails_assay <= 0.0 || feed_assay <= tails_assay)
    throw ConfigError("economics: bad assay parameters");
}

std::vector<double> EconomicParams::stage_costs(double enrichment) const {
  const double xp = enrichment / 100.0;
  const double xf = feed_assay, xt = tails_assay;
  auto V = [](double x) { return (1.0 - 2.0 * x) * std::log((1.0 - x) / x); };
  const double feed = (xp - xt) / (xf - xt);  // kg feed per kg product
  const double swu = V(xp) + (feed - 1.0) * V(xt) - feed * V(xf);

  std::vector<double> costs;
  costs.reserve(stages.size());
  for (const auto& s : stages) {
    if (s.name == "ore_conversion")
      costs.push_back(feed * (ore_price_per_kgu + conversion_price_per_kgu));
    else if (s.name == "enrichment")
      costs.push_back(swu * swu_price);
    else if (s.name == "fabrication")
      costs.push_back(fabrication_price_per_kgu);
    else if (s.name == "disposal")
      costs.push_back(disposal_price_per_kgu);
    else
      costs.push_back(0.0);
  }
  return costs;
}

double lcoe_core(double cycle_length_efpd, const EconomicParams& econ,
                 std::span<const CostClass> classes, double total_waba_units) {
  if (cycle_length_efpd <= 0.0)
    throw std::domain_error("lcoe: cycle length must be positive");
  const double r = econ.discount_rate;
  const double t_lev = cycle_length_efpd * econ.n_batchs / 365.25;
  const double k_f =
      econ.k_av * (1.0 - (econ.t_fo_years + econ.t_mo_years) / t_lev);
  const double efpy = k_f * t_lev;
  // r/(1 - exp(-r T)); expm1 keeps the r -> 0 limit 1/T exact to rounding.
  const double levelization =
      (r == 0.0) ? 1.0 / t_lev : r / (-std::expm1(-r * t_lev));

  double fabrication_lead = 0.0;
  for (const auto& s : econ.stages)
    if (s.name == "fabrication") fabrication_lead = s.lead_time_years;
  const double c_waba = total_waba_units * econ.waba_unit_cost *
                        std::exp(-r * fabrication_lead) / econ.core_mass_kgu;

  double cost_sum = 0.0;
  for (const auto& cls : classes) {
    if (cls.burnup <= 0.0)
      throw std::domain_error("lcoe: burnup must be positive");
    if (cls.stage_costs.size() != econ.stages.size())
      throw ContractViolation("lcoe: stage cost vector size mismatch");
    double c = 0.0;
    for (std::size_t k = 0; k < econ.stages.size(); ++k)
      c += cls.stage_costs[k] * std::exp(-r * econ.stages[k].lead_time_years);
    c += c_waba;
    cost_sum += cls.alpha * c / cls.burnup;
  }
  return efpy / (econ.eta * k_f * 24.0) * levelization * cost_sum;
}

double compute_lcoe(const LoadingPattern& pattern, const FomSet& foms,
                    const CoreGeometry& geometry,
                    const BurnedInventory& inventory,
                    const FreshCatalog& catalog, const EconomicParams& econ) {
  if (foms.cycle_length_efpd <= 0.0)
    throw std::domain_error("lcoe: cycle length must be positive");

  const auto& locs = geometry.locations();
  const int total = geometry.total_assemblies();

  // Core-average energy gained this cycle, taken from the evaluation itself so
  // the projection works for any evaluator.
  double e_avg = 0.0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const double boc = pattern.is_fresh(static_cast<int>(i))
                           ? 0.0
                           : inventory.group(pattern.burned_group[i]).boc_burnup;
    e_avg += (foms.eoc_exposure.at(i) - boc) * locs[i].multiplicity();
  }
  e_avg += foms.eoc_exposure.at(static_cast<std::size_t>(geometry.num_locations()));
  e_avg /= total;

  struct Agg {
    double alpha = 0.0;
    double burnup_sum = 0.0;
    int count = 0;
  };
  std::map<int, Agg> by_type;  // source fresh type id -> aggregate
  double total_waba = 0.0;

  auto add = [&](int type_id, int mult, double eoc, int age) {
    Agg& a = by_type[type_id];
    const double remaining = static_cast<double>(econ.n_batchs - age);
    const double discharge = eoc + std::max(0.0, remaining) * e_avg;
    a.alpha += static_cast<double>(mult) / total;
    a.burnup_sum += discharge * mult;
    a.count += mult;
  };

  for (std::size_t i = 0; i < locs.size(); ++i) {
    const int mult = locs[i].multiplicity();
    const double eoc = foms.eoc_exposure.at(i);
    if (pattern.is_fresh(static_cast<int>(i))) {
      const auto& t = catalog.type(pattern.fresh_type[i]);
      total_waba += static_cast<double>(t.waba_rods) * mult;
      add(t.id, mult, eoc, 1);
    } else {
      const auto& g = inventory.group(pattern.burned_group[i]);
      add(g.source_fresh_type, mult,
          eoc, g.burn_class == Role::Once ? 2 : 3);
    }
  }
  const auto& ct = catalog.type(geometry.center_fresh_type());
  total_waba += ct.waba_rods;
  add(ct.id, 1, foms.eoc_exposure.at(static_cast<std::size_t>(geometry.num_locations())), 1);

  std::vector<CostClass> classes;
  classes.reserve(by_type.size());
  for (const auto& [type_id, agg] : by_type) {
    CostClass cls;
    cls.alpha = agg.alpha;
    cls.burnup = agg.burnup_sum / agg.count;
    cls.stage_costs = econ.stage_costs(catalog.type(type_id).enrichment);
    classes.push_back(std::move(cls));
  }
  return lcoe_core(foms.cycle_length_efpd, econ, classes, total_waba);
}

nlohmann::json EconomicParams::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "economic_params";
  j["eta"] = eta;
  j["k_av"] = k_av;
  j["t_fo_years"] = t_fo_years;
  j["t_mo_years"] = t_mo_years;
  j["n_batchs"] = n_batchs;
  j["discount_rate"] = discount_rate;
  j["waba_unit_cost"] = waba_unit_cost;
  j["core_mass_kgu"] = core_mass_kgu;
  j["ore_price_per_kgu"] = ore_price_per_kgu;
  j["conversion_price_per_kgu"] = conversion_price_per_kgu;
  j["swu_price"] = swu_price;
  j["fabrication_price_per_kgu"] = fabrication_price_per_kgu;
  j["disposal_price_per_kgu"] = disposal_price_per_kgu;
  j["tails_assay"] = tails_assay;
  j["feed_assay"] = feed_assay;
  auto st = nlohmann::json::array();
  for (const auto& s : stages)
    st.push_back({{"name", s.name}, {"lead_time_years", s.lead_time_years}});
  j["stages"] = std::move(st);
  return j;
}

EconomicParams EconomicParams::from_json(const nlohmann::json& j) {
  try {
    EconomicParams p;
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("economics: unsupported schema_version");
    p.eta = j.value("eta", p.eta);
    p.k_av = j.value("k_av", p.k_av);
    p.t_fo_years = j.value("t_fo_years", p.t_fo_years);
    p.t_mo_years = j.value("t_mo_years", p.t_mo_years);
    p.n_batchs = j.value("n_batchs", p.n_batchs);
    p.discount_rate = j.value("discount_rate", p.discount_rate);
    p.waba_unit_cost = j.value("waba_unit_cost", p.waba_unit_cost);
    p.core_mass_kgu = j.value("core_mass_kgu", p.core_mass_kgu);
    p.ore_price_per_kgu = j.value("ore_price_per_kgu", p.ore_price_per_kgu);
    p.conversion_price_per_kgu =
        j.value("conversion_price_per_kgu", p.conversion_price_per_kgu);
    p.swu_price = j.value("swu_price", p.swu_price);
    p.fabrication_price_per_kgu =
        j.value("fabrication_price_per_kgu", p.fabrication_price_per_kgu);
    p.disposal_price_per_kgu =
        j.value("disposal_price_per_kgu", p.disposal_price_per_kgu);
    p.tails_assay = j.value("tails_assay", p.tails_assay);
    p.feed_assay = j.value("feed_assay", p.feed_assay);
    if (j.contains("stages")) {
      p.stages.clear();
      for (const auto& s : j.at("stages"))
        p.stages.push_back({s.at("name").get<std::string>(),
                            s.at("lead_time_years").get<double>()});
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("economics: malformed JSON: ") + e.what());
  }
}

}  // namespace lprl::pwr
