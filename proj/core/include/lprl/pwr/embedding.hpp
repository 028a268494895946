#pragma once

#include <json.hpp>

#include "lprl/env.hpp"
#include "lprl/pwr/pattern.hpp"
#include "lprl/pwr/surrogate.hpp"

namespace lprl::pwr {

/// Fixed min-max scaling ranges for the 7 per-assembly embedding features.
struct EmbeddingRanges {
  double enrichment_lo = 4.00, enrichment_hi = 4.95;
  double ifba_lo = 0.0, ifba_hi = 156.0;
  double waba_lo = 0.0, waba_hi = 24.0;
  double rpf_lo = 0.0, rpf_hi = 2.0;
  double fdh_lo = 1.429, fdh_hi = 2.206;
  double eoc_lo = 0.0, eoc_hi = 68.044;

  nlohmann::json to_json() const;
  static EmbeddingRanges from_json(const nlohmann::json& j);
};

constexpr int kEmbeddingWidth = 7;

/// State embedding: per decision location (array order, center excluded) the
/// tuple (relative position, enrichment, IFBA, WABA, rpf, FdH, EOC exposure),
/// each min-max scaled to [0, 1]. The first four features identify the
/// pattern; the last three carry the evaluated physics.
Observation embed(const LoadingPattern& pattern, const FomSet& foms,
                  const CoreGeometry& geometry,
                  const BurnedInventory& inventory, const FreshCatalog& catalog,
                  const EmbeddingRanges& ranges);

}  // namespace lprl::pwr
