#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "lprl/pwr/geometry.hpp"

namespace lprl::pwr {

/// One orderable fresh-assembly design: average enrichment plus the burnable
/// poison loading (IFBA rod count, WABA rodlet count).
struct FreshFuelType {
  int id = 0;
  double enrichment = 4.00;  // weight-% U-235
  int ifba_rods = 0;
  int waba_rods = 0;
};

class FreshCatalog {
 public:
  explicit FreshCatalog(std::vector<FreshFuelType> types);

  /// The 24-type catalog: enrichments {4.00, 4.45, 4.75, 4.95} crossed with
  /// BP options {(128,0),(156,0),(128,12),(128,24),(156,12),(156,24)}.
  static FreshCatalog default_catalog();

  static FreshCatalog from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int size() const { return static_cast<int>(types_.size()); }
  const FreshFuelType& type(int id) const;
  const std::vector<FreshFuelType>& types() const { return types_; }
  /// ids of WABA-free entries, for the control-rod replacement rule.
  const std::vector<int>& waba_free_ids() const { return waba_free_; }

 private:
  std::vector<FreshFuelType> types_;
  std::vector<int> waba_free_;
};

/// A symmetry group of identical burned assemblies (4 or 8 physical bundles
/// from symmetric positions of the previous cycle). Groups permute within
/// their location class; twice-burned compositions are fixed, only locations
/// change. WABA inserts are removed at refueling, so burned assemblies carry
/// no WABA regardless of their source type.
struct BurnedGroup {
  int id = 0;
  Role burn_class = Role::Once;  // Once or Twice
  LocationClass location_class = LocationClass::Interior;
  double boc_burnup = 0.0;      // GWd/tHm
  double boc_kinf_proxy = 0.0;  // reactivity stand-in used by the surrogate
  int source_fresh_type = 0;
  std::vector<int> member_ids;  // one unique id per physical assembly

  int members() const { return static_cast<int>(member_ids.size()); }
};

class BurnedInventory {
 public:
  explicit BurnedInventory(std::vector<BurnedGroup> groups);

  /// Synthetic equilibrium inventory matched to a geometry template: one group
  /// per burned decision location class slot, with once-burned BOC burnups
  /// drawn deterministically in [18, 26] GWd/tHm and twice-burned in [38, 48].
  static BurnedInventory synthesize(const CoreGeometry& geometry,
                                    const FreshCatalog& catalog,
                                    std::uint64_t seed);

  static BurnedInventory from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const std::vector<BurnedGroup>& groups() const { return groups_; }
  const BurnedGroup& group(int id) const;
  /// Group ids of a class pair, in id order; decode's availability lists.
  std::vector<int> group_ids(Role burn_class, LocationClass klass) const;
  int total_members(Role burn_class) const;

  /// Errors unless the group structure exactly fills the geometry template.
  void validate_against(const CoreGeometry& geometry) const;

 private:
  std::vector<BurnedGroup> groups_;
};

}  // namespace lprl::pwr
