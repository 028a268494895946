#pragma once

#include <span>
#include <string>
#include <vector>

#include "lprl/env.hpp"
#include "lprl/pwr/fuel.hpp"
#include "lprl/pwr/geometry.hpp"
#include "lprl/rng.hpp"

namespace lprl::pwr {

/// A complete assignment: per decision location either a fresh type id or a
/// burned group id, replicated to the whole symmetry orbit. The fixed fresh
/// center is implicit (geometry.center_fresh_type()).
struct LoadingPattern {
  std::vector<int> fresh_type;    // catalog id, or -1 where burned
  std::vector<int> burned_group;  // inventory group id, or -1 where fresh
  std::vector<bool> waba_replaced;  // decode substituted a WABA-free type here

  bool is_fresh(int loc) const { return fresh_type[loc] >= 0; }
};

/// Action layout for a geometry/inventory pair (Fig-3 location order): fresh
/// dimensions index the constant catalog, burned dimensions index the
/// remaining availability list of the location's class, which shrinks by one
/// per assignment. The final dimension of each burned class therefore has
/// cardinality 1.
ActionSpec build_action_spec(const CoreGeometry& geometry,
                             const BurnedInventory& inventory,
                             const FreshCatalog& catalog);

/// Decodes an action into a structurally valid pattern. Fresh locations are
/// filled first, then once- and twice-burned ones. A WABA-bearing choice on a
/// control-rod location is replaced by a uniformly random WABA-free type (the
/// only use of rng; decode is rng-independent otherwise).
LoadingPattern decode_action(std::span<const int> action,
                             const CoreGeometry& geometry,
                             const BurnedInventory& inventory,
                             const FreshCatalog& catalog, Rng& rng);

enum class StructuralRule {
  Uniqueness,    // every burned group placed exactly once, class respected
  Periphery,     // no fresh assembly on the periphery ring
  CrdWaba,       // no WABA-bearing assembly under a control rod
  FreshSquare,   // no 2x2 all-fresh square anywhere in the replicated core
  BatchCounts,   // fresh/once/twice totals match the template, fresh center
};

std::string rule_name(StructuralRule r);

/// Re-derives every structural rule from the assignment itself, independent of
/// the decoder. Empty result = valid.
std::vector<StructuralRule> check_structural(const LoadingPattern& pattern,
                                             const CoreGeometry& geometry,
                                             const BurnedInventory& inventory,
                                             const FreshCatalog& catalog);

/// (distinct enrichments, distinct BP patterns) over the fresh reload batch,
/// center included.
std::pair<int, int> count_batches(const LoadingPattern& pattern,
                                  const CoreGeometry& geometry,
                                  const FreshCatalog& catalog);

nlohmann::json pattern_to_json(const LoadingPattern& pattern,
                               const CoreGeometry& geometry,
                               const BurnedInventory& inventory,
                               const FreshCatalog& catalog);

}  // namespace lprl::pwr
