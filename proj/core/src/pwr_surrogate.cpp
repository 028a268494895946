#include "lprl/pwr/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lprl/errors.hpp"

namespace lprl::pwr {

void SurrogateParams::validate() const {
  if (axial_peaking < rod_peaking)
    throw ConfigError("surrogate: axial peaking must be >= rod peaking");
  if (smoothing_iterations < 0 || smoothing_weight < 0.0 ||
      smoothing_weight > 1.0 || edge_albedo < 0.0 || edge_albedo > 1.0)
    throw ConfigError("surrogate: bad smoothing parameters");
  if (specific_power_gwd_per_efpd <= 0.0 || pin_peaking < 1.0)
    throw ConfigError("surrogate: bad burnup parameters");
}

FomSet surrogate_evaluate(const LoadingPattern& pattern,
                          const CoreGeometry& geometry,
                          const BurnedInventory& inventory,
                          const FreshCatalog& catalog,
                          const SurrogateParams& sp) {
  const auto positions = geometry.all_positions();
  const int n = static_cast<int>(positions.size());
  std::map<Coord, int> index;
  for (int i = 0; i < n; ++i) index[positions[i]] = i;

  // Per-position composition, replicated from the decision locations.
  std::vector<double> rho_boc(static_cast<std::size_t>(n), 0.0);
  std::vector<double> rho_cycle(static_cast<std::size_t>(n), 0.0);
  std::vector<double> boc_burnup(static_cast<std::size_t>(n), 0.0);

  auto fresh_rho = [&](const FreshFuelType& t, double& boc, double& cycle) {
    const double bp_worth = sp.kinf_ifba_worth * t.ifba_rods / 156.0 +
                            sp.kinf_waba_worth * t.waba_rods / 24.0;
    boc = sp.kinf_base + sp.kinf_per_enrichment * (t.enrichment - 4.45) -
          bp_worth;
    cycle = boc + sp.bp_cycle_recovery * bp_worth;
  };

  const auto& locs = geometry.locations();
  for (std::size_t li = 0; li < locs.size(); ++li) {
    double boc_rho = 0.0, cyc_rho = 0.0, bu = 0.0;
    if (pattern.is_fresh(static_cast<int>(li))) {
      fresh_rho(catalog.type(pattern.fresh_type[li]), boc_rho, cyc_rho);
    } else {
      const auto& g = inventory.group(pattern.burned_group[li]);
      boc_rho = cyc_rho = g.boc_kinf_proxy;
      bu = g.boc_burnup;
    }
    for (const Coord& p : geometry.orbit(locs[li].rep)) {
      const int i = index.at(p);
      rho_boc[i] = boc_rho;
      rho_cycle[i] = cyc_rho;
      boc_burnup[i] = bu;
    }
  }
  {
    double boc_rho = 0.0, cyc_rho = 0.0;
    fresh_rho(catalog.type(geometry.center_fresh_type()), boc_rho, cyc_rho);
    const int i = index.at({0, 0});
    rho_boc[i] = boc_rho;
    rho_cycle[i] = cyc_rho;
  }

  double mean_cycle_rho = 0.0, mean_boc_rho = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_cycle_rho += rho_cycle[i];
    mean_boc_rho += rho_boc[i];
  }
  mean_cycle_rho /= n;
  mean_boc_rho /= n;

  // Power: exponential tilt from reactivity, diffused by a nearest-neighbor
  // kernel whose missing edge neighbors reflect with a sub-unit albedo, then
  // normalized to core mean 1.
  std::vector<double> power(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    power[i] = std::exp(sp.power_gain * (rho_cycle[i] - mean_cycle_rho));
  std::vector<double> next(static_cast<std::size_t>(n));
  for (int it = 0; it < sp.smoothing_iterations; ++it) {
    for (int i = 0; i < n; ++i) {
      const Coord p = positions[i];
      double acc = 0.0;
      for (const Coord nb : {Coord{p.row + 1, p.col}, Coord{p.row - 1, p.col},
                             Coord{p.row, p.col + 1}, Coord{p.row, p.col - 1}}) {
        auto found = index.find(nb);
        acc += (found != index.end()) ? power[found->second]
                                      : sp.edge_albedo * power[i];
      }
      next[i] = (1.0 - sp.smoothing_weight) * power[i] +
                sp.smoothing_weight * acc / 4.0;
    }
    power.swap(next);
  }
  double mean_power = 0.0;
  for (int i = 0; i < n; ++i) mean_power += power[i];
  mean_power /= n;
  for (int i = 0; i < n; ++i) power[i] /= mean_power;

  FomSet foms;
  foms.cycle_length_efpd = sp.cycle_intercept_efpd + sp.cycle_per_rho * mean_cycle_rho;
  foms.cb_ppm = sp.boron_intercept_ppm + sp.boron_per_rho * mean_boc_rho;

  double peak_power = 0.0, peak_eoc = 0.0;
  const double cycle_energy =
      sp.specific_power_gwd_per_efpd * foms.cycle_length_efpd;
  std::vector<double> eoc(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    peak_power = std::max(peak_power, power[i]);
    eoc[i] = boc_burnup[i] + power[i] * cycle_energy;
    peak_eoc = std::max(peak_eoc, eoc[i]);
  }
  foms.fq = peak_power * sp.axial_peaking;
  foms.fdh = peak_power * sp.rod_peaking;
  foms.pin_peak_bu = peak_eoc * sp.pin_peaking;

  // Report per decision location (+ center) using the orbit representative.
  const int m = geometry.num_locations();
  foms.rpf.resize(static_cast<std::size_t>(m) + 1);
  foms.fdh_assembly.resize(static_cast<std::size_t>(m) + 1);
  foms.eoc_exposure.resize(static_cast<std::size_t>(m) + 1);
  for (int li = 0; li < m; ++li) {
    const int i = index.at(locs[static_cast<std::size_t>(li)].rep);
    foms.rpf[li] = power[i];
    foms.fdh_assembly[li] = power[i] * sp.rod_peaking;
    foms.eoc_exposure[li] = eoc[i];
  }
  const int ci = index.at({0, 0});
  foms.rpf[m] = power[ci];
  foms.fdh_assembly[m] = power[ci] * sp.rod_peaking;
  foms.eoc_exposure[m] = eoc[ci];
  return foms;
}

nlohmann::json SurrogateParams::to_json() const {
  return {{"schema_version", 1},
          {"kind", "surrogate_params"},
          {"kinf_base", kinf_base},
          {"kinf_per_enrichment", kinf_per_enrichment},
          {"kinf_ifba_worth", kinf_ifba_worth},
          {"kinf_waba_worth", kinf_waba_worth},
          {"kinf_per_burnup", kinf_per_burnup},
          {"bp_cycle_recovery", bp_cycle_recovery},
          {"power_gain", power_gain},
          {"smoothing_iterations", smoothing_iterations},
          {"smoothing_weight", smoothing_weight},
          {"edge_albedo", edge_albedo},
          {"axial_peaking", axial_peaking},
          {"rod_peaking", rod_peaking},
          {"cycle_intercept_efpd", cycle_intercept_efpd},
          {"cycle_per_rho", cycle_per_rho},
          {"boron_intercept_ppm", boron_intercept_ppm},
          {"boron_per_rho", boron_per_rho},
          {"specific_power_gwd_per_efpd", specific_power_gwd_per_efpd},
          {"pin_peaking", pin_peaking}};
}

SurrogateParams SurrogateParams::from_json(const nlohmann::json& j) {
  try {
    SurrogateParams p;
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("surrogate: unsupported schema_version");
    p.kinf_base = j.value("kinf_base", p.kinf_base);
    p.kinf_per_enrichment = j.value("kinf_per_enrichment", p.kinf_per_enrichment);
    p.kinf_ifba_worth = j.value("kinf_ifba_worth", p.kinf_ifba_worth);
    p.kinf_waba_worth = j.value("kinf_waba_worth", p.kinf_waba_worth);
    p.kinf_per_burnup = j.value("kinf_per_burnup", p.kinf_per_burnup);
    p.bp_cycle_recovery = j.value("bp_cycle_recovery", p.bp_cycle_recovery);
    p.power_gain = j.value("power_gain", p.power_gain);
    p.smoothing_iterations = j.value("smoothing_iterations", p.smoothing_iterations);
    p.smoothing_weight = j.value("smoothing_weight", p.smoothing_weight);
    p.edge_albedo = j.value("edge_albedo", p.edge_albedo);
    p.axial_peaking = j.value("axial_peaking", p.axial_peaking);
    p.rod_peaking = j.value("rod_peaking", p.rod_peaking);
    p.cycle_intercept_efpd = j.value("cycle_intercept_efpd", p.cycle_intercept_efpd);
    p.cycle_per_rho = j.value("cycle_per_rho", p.cycle_per_rho);
    p.boron_intercept_ppm = j.value("boron_intercept_ppm", p.boron_intercept_ppm);
    p.boron_per_rho = j.value("boron_per_rho", p.boron_per_rho);
    p.specific_power_gwd_per_efpd =
        j.value("specific_power_gwd_per_efpd", p.specific_power_gwd_per_efpd);
    p.pin_peaking = j.value("pin_peaking", p.pin_peaking);
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("surrogate: malformed JSON: ") + e.what());
  }
}

nlohmann::json FomSet::to_json() const {
  return {{"cycle_length_efpd", cycle_length_efpd},
          {"fq", fq},
          {"fdh", fdh},
          {"cb_ppm", cb_ppm},
          {"pin_peak_bu_gwd_thm", pin_peak_bu},
          {"rpf", rpf},
          {"fdh_assembly", fdh_assembly},
          {"eoc_exposure", eoc_exposure}};
}

FomSet FomSet::from_json(const nlohmann::json& j) {
  FomSet f;
  f.cycle_length_efpd = j.at("cycle_length_efpd").get<double>();
  f.fq = j.at("fq").get<double>();
  f.fdh = j.at("fdh").get<double>();
  f.cb_ppm = j.at("cb_ppm").get<double>();
  f.pin_peak_bu = j.at("pin_peak_bu_gwd_thm").get<double>();
  f.rpf = j.value("rpf", std::vector<double>{});
  f.fdh_assembly = j.value("fdh_assembly", std::vector<double>{});
  f.eoc_exposure = j.value("eoc_exposure", std::vector<double>{});
  return f;
}

}  // namespace lprl::pwr
