#include "lprl/pwr/fuel.hpp"

#include <algorithm>
#include <set>

#include "lprl/errors.hpp"
#include "lprl/rng.hpp"

namespace lprl::pwr {

FreshCatalog::FreshCatalog(std::vector<FreshFuelType> types)
    : types_(std::move(types)) {
  if (types_.empty()) throw ConfigError("fresh catalog is empty");
  std::set<std::tuple<double, int, int>> distinct;
  for (int i = 0; i < size(); ++i) {
    const auto& t = types_[static_cast<std::size_t>(i)];
    if (t.id != i) throw ConfigError("fresh catalog ids must be 0..n-1 in order");
    if (t.enrichment < 4.00 - 1e-9 || t.enrichment > 4.95 + 1e-9)
      throw ConfigError("fresh enrichment outside [4.00, 4.95]");
    if (t.ifba_rods != 0 && t.ifba_rods != 128 && t.ifba_rods != 156)
      throw ConfigError("IFBA loading must be 0, 128 or 156");
    if (t.waba_rods != 0 && t.waba_rods != 12 && t.waba_rods != 24)
      throw ConfigError("WABA loading must be 0, 12 or 24");
    if (!distinct.insert({t.enrichment, t.ifba_rods, t.waba_rods}).second)
      throw ConfigError("fresh catalog contains duplicate types");
    if (t.waba_rods == 0) waba_free_.push_back(t.id);
  }
  if (waba_free_.empty())
    throw ConfigError("fresh catalog needs at least one WABA-free type");
}

FreshCatalog FreshCatalog::default_catalog() {
  const double enrichments[] = {4.00, 4.45, 4.75, 4.95};
  const std::pair<int, int> bp[] = {{128, 0}, {156, 0}, {128, 12},
                                    {128, 24}, {156, 12}, {156, 24}};
  std::vector<FreshFuelType> types;
  int id = 0;
  for (double e : enrichments)
    for (auto [ifba, waba] : bp)
      types.push_back({id++, e, ifba, waba});
  return FreshCatalog(std::move(types));
}

const FreshFuelType& FreshCatalog::type(int id) const {
  if (id < 0 || id >= size()) throw ContractViolation("fresh type id out of range");
  return types_[static_cast<std::size_t>(id)];
}

nlohmann::json FreshCatalog::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "fresh_catalog";
  auto arr = nlohmann::json::array();
  for (const auto& t : types_)
    arr.push_back({{"id", t.id},
                   {"enrichment", t.enrichment},
                   {"ifba_rods", t.ifba_rods},
                   {"waba_rods", t.waba_rods}});
  j["types"] = std::move(arr);
  return j;
}

FreshCatalog FreshCatalog::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("catalog: unsupported schema_version");
    std::vector<FreshFuelType> types;
    for (const auto& e : j.at("types"))
      types.push_back({e.at("id").get<int>(), e.at("enrichment").get<double>(),
                       e.at("ifba_rods").get<int>(),
                       e.at("waba_rods").get<int>()});
    return FreshCatalog(std::move(types));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("catalog: malformed JSON: ") + e.what());
  }
}

BurnedInventory::BurnedInventory(std::vector<BurnedGroup> groups)
    : groups_(std::move(groups)) {
  std::set<int> group_ids_seen, member_ids_seen;
  for (int i = 0; i < static_cast<int>(groups_.size()); ++i) {
    const auto& g = groups_[static_cast<std::size_t>(i)];
    if (g.id != i) throw ConfigError("inventory group ids must be 0..n-1 in order");
    if (g.burn_class == Role::Fresh)
      throw ConfigError("inventory groups must be once- or twice-burned");
    const int expect = g.location_class == LocationClass::Interior ? 8 : 4;
    if (g.members() != expect)
      throw ConfigError("inventory group member count does not match its class");
    if (g.boc_burnup <= 0.0)
      throw ConfigError("inventory burnup must be positive");
    for (int m : g.member_ids)
      if (!member_ids_seen.insert(m).second)
        throw ConfigError("inventory member ids must be unique");
  }
}

const BurnedGroup& BurnedInventory::group(int id) const {
  if (id < 0 || id >= static_cast<int>(groups_.size()))
    throw ContractViolation("burned group id out of range");
  return groups_[static_cast<std::size_t>(id)];
}

std::vector<int> BurnedInventory::group_ids(Role burn_class,
                                            LocationClass klass) const {
  std::vector<int> ids;
  for (const auto& g : groups_)
    if (g.burn_class == burn_class && g.location_class == klass)
      ids.push_back(g.id);
  return ids;
}

int BurnedInventory::total_members(Role burn_class) const {
  int n = 0;
  for (const auto& g : groups_)
    if (g.burn_class == burn_class) n += g.members();
  return n;
}

void BurnedInventory::validate_against(const CoreGeometry& geometry) const {
  for (Role role : {Role::Once, Role::Twice})
    for (LocationClass klass : {LocationClass::Interior, LocationClass::Line}) {
      const auto slots = geometry.location_indices(role, klass);
      const auto ids = group_ids(role, klass);
      if (slots.size() != ids.size())
        throw ConfigError("inventory does not fill the geometry template: " +
                          role_name(role) + " group count mismatch");
    }
}

BurnedInventory BurnedInventory::synthesize(const CoreGeometry& geometry,
                                            const FreshCatalog& catalog,
                                            std::uint64_t seed) {
  Rng rng = Rng::seeded(Rng::mix(seed, 0x1a7e));
  std::vector<BurnedGroup> groups;
  int next_member = 0;

  // Kept in sync with the surrogate reactivity model so that burned kinf
  // proxies line up with what fresh assemblies of the source type would decay
  // to at the drawn burnup.
  auto kinf = [&](double enr, double bu) {
    return 0.20 + 0.12 * (enr - 4.45) - 0.0075 * bu;
  };

  auto synth_class = [&](Role role, LocationClass klass, double lo, double hi) {
    const auto slots = geometry.location_indices(role, klass);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      BurnedGroup g;
      g.id = static_cast<int>(groups.size());
      g.burn_class = role;
      g.location_class = klass;
      g.boc_burnup = lo + (hi - lo) * rng.uniform();
      // Burned fuel came from mid-to-high enrichment reloads.
      const auto& wf = catalog.waba_free_ids();
      g.source_fresh_type = wf[rng.uniform_int(wf.size())];
      g.boc_kinf_proxy =
          kinf(catalog.type(g.source_fresh_type).enrichment, g.boc_burnup);
      const int n = klass == LocationClass::Interior ? 8 : 4;
      for (int m = 0; m < n; ++m) g.member_ids.push_back(next_member++);
      groups.push_back(std::move(g));
    }
  };

  synth_class(Role::Once, LocationClass::Interior, 18.0, 26.0);
  synth_class(Role::Once, LocationClass::Line, 18.0, 26.0);
  synth_class(Role::Twice, LocationClass::Interior, 38.0, 48.0);
  synth_class(Role::Twice, LocationClass::Line, 38.0, 48.0);

  BurnedInventory inv(std::move(groups));
  inv.validate_against(geometry);
  return inv;
}

nlohmann::json BurnedInventory::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "burned_inventory";
  auto arr = nlohmann::json::array();
  for (const auto& g : groups_) {
    arr.push_back({{"id", g.id},
                   {"burn_class", role_name(g.burn_class)},
                   {"location_class", g.location_class == LocationClass::Interior
                                          ? "interior"
                                          : "line"},
                   {"boc_burnup", g.boc_burnup},
                   {"boc_kinf_proxy", g.boc_kinf_proxy},
                   {"source_fresh_type", g.source_fresh_type},
                   {"member_ids", g.member_ids}});
  }
  j["groups"] = std::move(arr);
  return j;
}

BurnedInventory BurnedInventory::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("inventory: unsupported schema_version");
    std::vector<BurnedGroup> groups;
    for (const auto& e : j.at("groups")) {
      BurnedGroup g;
      g.id = e.at("id").get<int>();
      g.burn_class = role_from_name(e.at("burn_class").get<std::string>());
      const std::string klass = e.at("location_class").get<std::string>();
      if (klass != "interior" && klass != "line")
        throw ConfigError("inventory: bad location class");
      g.location_class =
          klass == "interior" ? LocationClass::Interior : LocationClass::Line;
      g.boc_burnup = e.at("boc_burnup").get<double>();
      g.boc_kinf_proxy = e.at("boc_kinf_proxy").get<double>();
      g.source_fresh_type = e.at("source_fresh_type").get<int>();
      g.member_ids = e.at("member_ids").get<std::vector<int>>();
      groups.push_back(std::move(g));
    }
    return BurnedInventory(std::move(groups));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("inventory: malformed JSON: ") + e.what());
  }
}

}  // namespace lprl::pwr
