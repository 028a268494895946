#include "lprl/pwr/geometry.hpp"

#include <algorithm>
#include <set>

#include "lprl/errors.hpp"

namespace lprl::pwr {

std::string role_name(Role r) {
  switch (r) {
    case Role::Fresh: return "fresh";
    case Role::Once: return "once";
    case Role::Twice: return "twice";
  }
  return "?";
}

Role role_from_name(const std::string& s) {
  if (s == "fresh") return Role::Fresh;
  if (s == "once") return Role::Once;
  if (s == "twice") return Role::Twice;
  throw ConfigError("unknown role: " + s);
}

CoreGeometry::CoreGeometry(std::vector<int> max_col,
                           std::vector<DecisionLocation> locations,
                           bool center_crd, int center_fresh_type)
    : max_col_(std::move(max_col)),
      locations_(std::move(locations)),
      center_crd_(center_crd),
      center_fresh_type_(center_fresh_type) {
  validate();
  total_assemblies_ = 1;
  for (const auto& loc : locations_) total_assemblies_ += loc.multiplicity();
}

bool CoreGeometry::in_core(Coord c) const {
  const int r = std::abs(c.row);
  if (r > radius()) return false;
  return std::abs(c.col) <= max_col_[static_cast<std::size_t>(r)];
}

bool CoreGeometry::is_periphery(Coord c) const {
  if (!in_core(c)) return false;
  return !in_core({c.row + 1, c.col}) || !in_core({c.row - 1, c.col}) ||
         !in_core({c.row, c.col + 1}) || !in_core({c.row, c.col - 1});
}

std::vector<Coord> CoreGeometry::orbit(Coord rep) const {
  std::set<Coord> coords;
  const int i = rep.row, j = rep.col;
  for (int si : {1, -1})
    for (int sj : {1, -1}) {
      coords.insert({si * i, sj * j});
      coords.insert({si * j, sj * i});
    }
  return {coords.begin(), coords.end()};
}

std::vector<Coord> CoreGeometry::all_positions() const {
  std::vector<Coord> out;
  out.reserve(static_cast<std::size_t>(total_assemblies_));
  for (int r = -radius(); r <= radius(); ++r)
    for (int c = -radius(); c <= radius(); ++c)
      if (in_core({r, c})) out.push_back({r, c});
  return out;
}

int CoreGeometry::slots(Role role) const {
  int n = 0;
  for (const auto& loc : locations_)
    if (loc.role == role) n += loc.multiplicity();
  return n;
}

std::vector<int> CoreGeometry::location_indices(Role role,
                                                LocationClass klass) const {
  std::vector<int> idx;
  for (int i = 0; i < num_locations(); ++i)
    if (locations_[i].role == role && locations_[i].klass == klass)
      idx.push_back(i);
  return idx;
}

std::vector<int> CoreGeometry::location_indices(Role role) const {
  std::vector<int> idx;
  for (int i = 0; i < num_locations(); ++i)
    if (locations_[i].role == role) idx.push_back(i);
  return idx;
}

void CoreGeometry::validate() const {
  if (max_col_.empty()) throw ConfigError("geometry: empty shape");
  for (std::size_t r = 0; r < max_col_.size(); ++r) {
    if (max_col_[r] < 0 || max_col_[r] > radius())
      throw ConfigError("geometry: shape column bound out of range");
    // Mirror consistency: (i, j) in core iff (j, i) in core.
    for (int c = 0; c <= max_col_[r]; ++c)
      if (max_col_[static_cast<std::size_t>(c)] < static_cast<int>(r))
        throw ConfigError("geometry: shape not symmetric under transposition");
  }
  std::set<Coord> seen;
  bool in_line_block = false;
  for (const auto& loc : locations_) {
    const Coord p = loc.rep;
    if (p.row <= 0 || p.col < 0 || p.col > p.row)
      throw ConfigError("geometry: representative not normalized to the octant");
    if (!in_core(p)) throw ConfigError("geometry: location outside the core");
    if (!seen.insert(p).second)
      throw ConfigError("geometry: duplicate decision location");
    const bool on_line = (p.col == 0 || p.col == p.row);
    if (on_line != (loc.klass == LocationClass::Line))
      throw ConfigError("geometry: location class does not match coordinates");
    if (on_line)
      in_line_block = true;
    else if (in_line_block)
      throw ConfigError(
          "geometry: interior locations must precede symmetry-line locations");
    if (is_periphery(p) != loc.periphery)
      throw ConfigError("geometry: periphery flag disagrees with the shape");
    if (loc.periphery && loc.role == Role::Fresh)
      throw ConfigError("geometry: template places fresh fuel on the periphery");
  }
  // Every non-center octant position must be a decision location.
  int expected = 0;
  for (int i = 1; i <= radius(); ++i)
    for (int j = 0; j <= i; ++j)
      if (in_core({i, j})) ++expected;
  if (static_cast<int>(locations_.size()) != expected)
    throw ConfigError("geometry: decision locations do not cover the octant");
}

CoreGeometry CoreGeometry::default_w193() {
  const std::vector<int> shape = {7, 7, 7, 7, 6, 6, 5, 3};

  // Fresh sits on an odd-parity checkerboard (plus four line locations picked
  // so that no 2x2 all-fresh square can form anywhere in the replicated map).
  const std::set<Coord> fresh = {{2, 1}, {3, 2}, {4, 1}, {4, 3},
                                 {5, 2}, {5, 4}, {6, 1}, {6, 3},
                                 {1, 0}, {3, 0}, {5, 0}, {6, 0},
                                 {2, 2}, {4, 4}};
  const std::set<Coord> twice = {{7, 2}, {6, 5}};
  const std::set<Coord> crd = {{2, 0}, {4, 0}, {6, 0}, {2, 2},
                               {4, 2}, {4, 4}, {6, 2}};

  std::vector<DecisionLocation> interior, line;
  for (int i = 1; i <= 7; ++i)
    for (int j = 0; j <= i; ++j) {
      const Coord p{i, j};
      if (std::abs(p.col) > shape[static_cast<std::size_t>(p.row)]) continue;
      DecisionLocation loc;
      loc.rep = p;
      loc.klass = (j == 0 || j == i) ? LocationClass::Line
                                     : LocationClass::Interior;
      loc.role = fresh.count(p) ? Role::Fresh
                 : twice.count(p) ? Role::Twice
                                  : Role::Once;
      loc.crd = crd.count(p) > 0;
      (loc.klass == LocationClass::Interior ? interior : line).push_back(loc);
    }
  // Symmetry-line block starts from the diagonal (Fig-3 array order).
  std::stable_sort(line.begin(), line.end(),
                   [](const DecisionLocation& a, const DecisionLocation& b) {
                     const bool da = a.rep.col == a.rep.row;
                     const bool db = b.rep.col == b.rep.row;
                     if (da != db) return da;
                     return a.rep < b.rep;
                   });
  std::vector<DecisionLocation> locations = std::move(interior);
  locations.insert(locations.end(), line.begin(), line.end());

  // Periphery flags from the shape.
  auto in_core = [&shape](Coord c) {
    const int r = std::abs(c.row);
    if (r >= static_cast<int>(shape.size())) return false;
    return std::abs(c.col) <= shape[static_cast<std::size_t>(r)];
  };
  for (auto& loc : locations) {
    const Coord p = loc.rep;
    loc.periphery = !in_core({p.row + 1, p.col}) || !in_core({p.row - 1, p.col}) ||
                    !in_core({p.row, p.col + 1}) || !in_core({p.row, p.col - 1});
  }

  // Center: lowest enrichment, highest burnable-poison load, WABA-free since
  // the center position holds a control rod. Type id 1 in the default catalog
  // (4.00 w/o, IFBA 156, WABA 0).
  return CoreGeometry(shape, std::move(locations), true, 1);
}

nlohmann::json CoreGeometry::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "core_geometry";
  j["max_col"] = max_col_;
  j["center"] = {{"crd", center_crd_}, {"fresh_type", center_fresh_type_}};
  auto locs = nlohmann::json::array();
  for (const auto& loc : locations_) {
    locs.push_back({{"row", loc.rep.row},
                    {"col", loc.rep.col},
                    {"class", loc.klass == LocationClass::Interior ? "interior"
                                                                   : "line"},
                    {"role", role_name(loc.role)},
                    {"periphery", loc.periphery},
                    {"crd", loc.crd}});
  }
  j["locations"] = std::move(locs);
  return j;
}

CoreGeometry CoreGeometry::from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("geometry: unsupported schema_version");
    std::vector<int> shape = j.at("max_col").get<std::vector<int>>();
    std::vector<DecisionLocation> locations;
    for (const auto& e : j.at("locations")) {
      DecisionLocation loc;
      loc.rep = {e.at("row").get<int>(), e.at("col").get<int>()};
      const std::string klass = e.at("class").get<std::string>();
      if (klass != "interior" && klass != "line")
        throw ConfigError("geometry: bad location class " + klass);
      loc.klass =
          klass == "interior" ? LocationClass::Interior : LocationClass::Line;
      loc.role = role_from_name(e.at("role").get<std::string>());
      loc.periphery = e.at("periphery").get<bool>();
      loc.crd = e.at("crd").get<bool>();
      locations.push_back(loc);
    }
    const auto& center = j.at("center");
    return CoreGeometry(std::move(shape), std::move(locations),
                        center.at("crd").get<bool>(),
                        center.at("fresh_type").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("geometry: malformed JSON: ") + e.what());
  }
}

}  // namespace lprl::pwr
