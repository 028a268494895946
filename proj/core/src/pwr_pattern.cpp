#include "lprl/pwr/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lprl/errors.hpp"

namespace lprl::pwr {

ActionSpec build_action_spec(const CoreGeometry& geometry,
                             const BurnedInventory& inventory,
                             const FreshCatalog& catalog) {
  inventory.validate_against(geometry);
  ActionSpec spec;
  int remaining_once_interior =
      static_cast<int>(inventory.group_ids(Role::Once, LocationClass::Interior).size());
  int remaining_once_line =
      static_cast<int>(inventory.group_ids(Role::Once, LocationClass::Line).size());
  int remaining_twice_interior =
      static_cast<int>(inventory.group_ids(Role::Twice, LocationClass::Interior).size());
  int remaining_twice_line =
      static_cast<int>(inventory.group_ids(Role::Twice, LocationClass::Line).size());

  for (const auto& loc : geometry.locations()) {
    int card = 0;
    if (loc.role == Role::Fresh) {
      card = catalog.size();
    } else {
      int& remaining =
          loc.role == Role::Once
              ? (loc.klass == LocationClass::Interior ? remaining_once_interior
                                                      : remaining_once_line)
              : (loc.klass == LocationClass::Interior ? remaining_twice_interior
                                                      : remaining_twice_line);
      card = remaining--;
    }
    spec.cardinalities.push_back(card);
  }
  return spec;
}

LoadingPattern decode_action(std::span<const int> action,
                             const CoreGeometry& geometry,
                             const BurnedInventory& inventory,
                             const FreshCatalog& catalog, Rng& rng) {
  const auto& locs = geometry.locations();
  if (static_cast<int>(action.size()) != geometry.num_locations())
    throw ContractViolation("decode_action: action length mismatch");

  LoadingPattern pattern;
  pattern.fresh_type.assign(locs.size(), -1);
  pattern.burned_group.assign(locs.size(), -1);
  pattern.waba_replaced.assign(locs.size(), false);

  // Pass 1: fresh locations, constant catalog indexing.
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (locs[i].role != Role::Fresh) continue;
    const int k = action[i];
    if (k < 0 || k >= catalog.size())
      throw ContractViolation("decode_action: fresh index out of range");
    int type_id = k;
    if (locs[i].crd && catalog.type(type_id).waba_rods > 0) {
      const auto& ok = catalog.waba_free_ids();
      type_id = ok[rng.uniform_int(ok.size())];
      pattern.waba_replaced[i] = true;
    }
    pattern.fresh_type[i] = type_id;
  }

  // Pass 2: burned locations; each class draws from its own shrinking list.
  std::map<std::pair<Role, LocationClass>, std::vector<int>> available;
  for (Role role : {Role::Once, Role::Twice})
    for (LocationClass klass : {LocationClass::Interior, LocationClass::Line})
      available[{role, klass}] = inventory.group_ids(role, klass);

  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (locs[i].role == Role::Fresh) continue;
    auto& list = available[{locs[i].role, locs[i].klass}];
    const int k = action[i];
    if (k < 0 || k >= static_cast<int>(list.size()))
      throw ContractViolation("decode_action: burned index out of range");
    pattern.burned_group[i] = list[static_cast<std::size_t>(k)];
    list.erase(list.begin() + k);
  }
  return pattern;
}

std::string rule_name(StructuralRule r) {
  switch (r) {
    case StructuralRule::Uniqueness: return "uniqueness";
    case StructuralRule::Periphery: return "periphery";
    case StructuralRule::CrdWaba: return "crd_waba";
    case StructuralRule::FreshSquare: return "fresh_square";
    case StructuralRule::BatchCounts: return "batch_counts";
  }
  return "?";
}

std::vector<StructuralRule> check_structural(const LoadingPattern& pattern,
                                             const CoreGeometry& geometry,
                                             const BurnedInventory& inventory,
                                             const FreshCatalog& catalog) {
  std::vector<StructuralRule> violated;
  const auto& locs = geometry.locations();

  // Uniqueness and class matching of burned groups; every group placed once.
  bool uniqueness_ok = true;
  std::set<int> used;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const int g = pattern.burned_group[i];
    if (g < 0) continue;
    if (g >= static_cast<int>(inventory.groups().size()) ||
        !used.insert(g).second) {
      uniqueness_ok = false;
      continue;
    }
    const auto& grp = inventory.group(g);
    if (grp.location_class != locs[i].klass) uniqueness_ok = false;
  }
  if (used.size() != inventory.groups().size()) uniqueness_ok = false;
  if (!uniqueness_ok) violated.push_back(StructuralRule::Uniqueness);

  // Periphery: no fresh assembly on the edge ring.
  for (std::size_t i = 0; i < locs.size(); ++i)
    if (pattern.is_fresh(static_cast<int>(i)) && locs[i].periphery) {
      violated.push_back(StructuralRule::Periphery);
      break;
    }

  // Control rods exclude WABA (burned assemblies have their inserts removed).
  bool crd_ok = true;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (!locs[i].crd || !pattern.is_fresh(static_cast<int>(i))) continue;
    if (catalog.type(pattern.fresh_type[i]).waba_rods > 0) crd_ok = false;
  }
  if (geometry.center_crd() &&
      catalog.type(geometry.center_fresh_type()).waba_rods > 0)
    crd_ok = false;
  if (!crd_ok) violated.push_back(StructuralRule::CrdWaba);

  // 2x2 fresh squares are checked on the full replicated map, since octant
  // squares can straddle symmetry lines.
  const int R = geometry.radius();
  const int W = 2 * R + 1;
  std::vector<char> fresh_map(static_cast<std::size_t>(W) * W, 0);
  auto at = [&](int r, int c) -> char& {
    return fresh_map[static_cast<std::size_t>(r + R) * W + (c + R)];
  };
  at(0, 0) = 1;  // fresh center
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (!pattern.is_fresh(static_cast<int>(i))) continue;
    for (const Coord& p : geometry.orbit(locs[i].rep)) at(p.row, p.col) = 1;
  }
  bool square_ok = true;
  for (int r = -R; r < R && square_ok; ++r)
    for (int c = -R; c < R; ++c) {
      if (!geometry.in_core({r, c}) || !geometry.in_core({r + 1, c}) ||
          !geometry.in_core({r, c + 1}) || !geometry.in_core({r + 1, c + 1}))
        continue;
      if (at(r, c) && at(r + 1, c) && at(r, c + 1) && at(r + 1, c + 1)) {
        square_ok = false;
        break;
      }
    }
  if (!square_ok) violated.push_back(StructuralRule::FreshSquare);

  // Batch totals against the template (fresh count excludes the center).
  int fresh_count = 0, once_count = 0, twice_count = 0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const int mult = locs[i].multiplicity();
    if (pattern.is_fresh(static_cast<int>(i))) {
      fresh_count += mult;
    } else if (pattern.burned_group[i] >= 0 &&
               pattern.burned_group[i] <
                   static_cast<int>(inventory.groups().size())) {
      (inventory.group(pattern.burned_group[i]).burn_class == Role::Once
           ? once_count
           : twice_count) += mult;
    }
  }
  if (fresh_count != geometry.slots(Role::Fresh) ||
      once_count != geometry.slots(Role::Once) ||
      twice_count != geometry.slots(Role::Twice))
    violated.push_back(StructuralRule::BatchCounts);

  return violated;
}

std::pair<int, int> count_batches(const LoadingPattern& pattern,
                                  const CoreGeometry& geometry,
                                  const FreshCatalog& catalog) {
  std::set<double> enrichments;
  std::set<std::pair<int, int>> bp_patterns;
  auto add = [&](int type_id) {
    const auto& t = catalog.type(type_id);
    enrichments.insert(t.enrichment);
    bp_patterns.insert({t.ifba_rods, t.waba_rods});
  };
  add(geometry.center_fresh_type());
  for (std::size_t i = 0; i < pattern.fresh_type.size(); ++i)
    if (pattern.is_fresh(static_cast<int>(i))) add(pattern.fresh_type[i]);
  return {static_cast<int>(enrichments.size()),
          static_cast<int>(bp_patterns.size())};
}

nlohmann::json pattern_to_json(const LoadingPattern& pattern,
                               const CoreGeometry& geometry,
                               const BurnedInventory& inventory,
                               const FreshCatalog& catalog) {
  auto arr = nlohmann::json::array();
  const auto& locs = geometry.locations();
  for (std::size_t i = 0; i < locs.size(); ++i) {
    nlohmann::json e;
    e["location"] = static_cast<int>(i);
    e["row"] = locs[i].rep.row;
    e["col"] = locs[i].rep.col;
    if (pattern.is_fresh(static_cast<int>(i))) {
      const auto& t = catalog.type(pattern.fresh_type[i]);
      e["assembly_id"] = "F" + std::to_string(t.id);
      e["enrichment"] = t.enrichment;
      e["ifba"] = t.ifba_rods;
      e["waba"] = t.waba_rods;
      e["boc_burnup"] = 0.0;
    } else {
      const auto& g = inventory.group(pattern.burned_group[i]);
      const auto& t = catalog.type(g.source_fresh_type);
      e["assembly_id"] = "B" + std::to_string(g.id);
      e["enrichment"] = t.enrichment;
      e["ifba"] = t.ifba_rods;
      e["waba"] = 0;  // inserts removed after the first cycle
      e["boc_burnup"] = g.boc_burnup;
    }
    arr.push_back(std::move(e));
  }
  const auto& ct = catalog.type(geometry.center_fresh_type());
  arr.push_back({{"location", geometry.num_locations()},
                 {"row", 0},
                 {"col", 0},
                 {"assembly_id", "C"},
                 {"enrichment", ct.enrichment},
                 {"ifba", ct.ifba_rods},
                 {"waba", ct.waba_rods},
                 {"boc_burnup", 0.0}});
  return arr;
}

}  // namespace lprl::pwr
