#include "lprl/pwr/embedding.hpp"

#include <algorithm>

namespace lprl::pwr {

namespace {

double scaled(double x, double lo, double hi) {
  if (hi <= lo) return 0.0;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

Observation embed(const LoadingPattern& pattern, const FomSet& foms,
                  const CoreGeometry& geometry,
                  const BurnedInventory& inventory, const FreshCatalog& catalog,
                  const EmbeddingRanges& rg) {
  const int n = geometry.num_locations();
  Observation obs(static_cast<std::size_t>(n) * kEmbeddingWidth, 0.0);
  for (int i = 0; i < n; ++i) {
    double enrichment, ifba, waba;
    if (pattern.is_fresh(i)) {
      const auto& t = catalog.type(pattern.fresh_type[i]);
      enrichment = t.enrichment;
      ifba = t.ifba_rods;
      waba = t.waba_rods;
    } else {
      const auto& g = inventory.group(pattern.burned_group[i]);
      const auto& t = catalog.type(g.source_fresh_type);
      enrichment = t.enrichment;
      ifba = t.ifba_rods;
      waba = 0.0;  // inserts removed at refueling
    }
    double* f = obs.data() + static_cast<std::size_t>(i) * kEmbeddingWidth;
    f[0] = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
    f[1] = scaled(enrichment, rg.enrichment_lo, rg.enrichment_hi);
    f[2] = scaled(ifba, rg.ifba_lo, rg.ifba_hi);
    f[3] = scaled(waba, rg.waba_lo, rg.waba_hi);
    f[4] = scaled(foms.rpf.at(static_cast<std::size_t>(i)), rg.rpf_lo, rg.rpf_hi);
    f[5] = scaled(foms.fdh_assembly.at(static_cast<std::size_t>(i)), rg.fdh_lo,
                  rg.fdh_hi);
    f[6] = scaled(foms.eoc_exposure.at(static_cast<std::size_t>(i)), rg.eoc_lo,
                  rg.eoc_hi);
  }
  return obs;
}

nlohmann::json EmbeddingRanges::to_json() const {
  return {{"enrichment", {enrichment_lo, enrichment_hi}},
          {"ifba", {ifba_lo, ifba_hi}},
          {"waba", {waba_lo, waba_hi}},
          {"rpf", {rpf_lo, rpf_hi}},
          {"fdh", {fdh_lo, fdh_hi}},
          {"eoc", {eoc_lo, eoc_hi}}};
}

EmbeddingRanges EmbeddingRanges::from_json(const nlohmann::json& j) {
  EmbeddingRanges r;
  auto pair = [&](const char* key, double& lo, double& hi) {
    if (j.contains(key)) {
      lo = j.at(key).at(0).get<double>();
      hi = j.at(key).at(1).get<double>();
    }
  };
  pair("enrichment", r.enrichment_lo, r.enrichment_hi);
  pair("ifba", r.ifba_lo, r.ifba_hi);
  pair("waba", r.waba_lo, r.waba_hi);
  pair("rpf", r.rpf_lo, r.rpf_hi);
  pair("fdh", r.fdh_lo, r.fdh_hi);
  pair("eoc", r.eoc_lo, r.eoc_hi);
  return r;
}

}  // namespace lprl::pwr
