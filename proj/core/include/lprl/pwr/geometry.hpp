#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace lprl::pwr {

/// Full-lattice coordinate, rows and columns in [-R, R] around the center.
struct Coord {
  int row = 0;
  int col = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

enum class Role { Fresh, Once, Twice };
enum class LocationClass { Interior, Line };  // octant interior vs symmetry line

std::string role_name(Role r);
Role role_from_name(const std::string& s);

/// One decision location: an octant representative whose choice is replicated
/// to its whole symmetry orbit (8 assemblies for interior locations, 4 for
/// symmetry-line locations).
struct DecisionLocation {
  Coord rep;  // normalized: row >= col >= 0, not the center
  LocationClass klass = LocationClass::Interior;
  Role role = Role::Once;  // template role: which kind of fuel sits here
  bool periphery = false;
  bool crd = false;

  int multiplicity() const { return klass == LocationClass::Interior ? 8 : 4; }
};

/// Core map under mirror eighth symmetry: the lattice shape, the decision
/// locations in array order (octant interior first, then symmetry-line
/// locations starting from the diagonal), the fixed fresh center, and the
/// periphery/control-rod sets.
class CoreGeometry {
 public:
  /// max_col[r] = largest |col| present in row |r|; defines the core shape.
  CoreGeometry(std::vector<int> max_col, std::vector<DecisionLocation> locations,
               bool center_crd, int center_fresh_type);

  /// The 193-assembly Westinghouse-style map with the template this project
  /// ships by default: 14 fresh decision locations (8 interior + 6 line),
  /// 14 once-burned (8 interior + 6 line), 2 twice-burned interior locations
  /// on the periphery ring, and a fixed fresh center.
  static CoreGeometry default_w193();

  static CoreGeometry from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int radius() const { return static_cast<int>(max_col_.size()) - 1; }
  bool in_core(Coord c) const;
  bool is_periphery(Coord c) const;  // has a 4-neighbor outside the core
  int total_assemblies() const { return total_assemblies_; }

  const std::vector<DecisionLocation>& locations() const { return locations_; }
  int num_locations() const { return static_cast<int>(locations_.size()); }
  bool center_crd() const { return center_crd_; }
  int center_fresh_type() const { return center_fresh_type_; }

  /// Distinct full-lattice coordinates of a representative's symmetry orbit.
  std::vector<Coord> orbit(Coord rep) const;
  /// All lattice positions of the core, row-major.
  std::vector<Coord> all_positions() const;

  /// Template slot counts (assemblies, not locations) per role; fresh count
  /// excludes the center.
  int slots(Role role) const;
  /// Decision locations of a given role and class, in array order.
  std::vector<int> location_indices(Role role, LocationClass klass) const;
  std::vector<int> location_indices(Role role) const;

 private:
  void validate() const;

  std::vector<int> max_col_;
  std::vector<DecisionLocation> locations_;
  bool center_crd_ = true;
  int center_fresh_type_ = 0;
  int total_assemblies_ = 0;
};

}  // namespace lprl::pwr
