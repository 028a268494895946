#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lprl/errors.hpp"
#include "lprl/pwr/geometry.hpp"

using namespace lprl::pwr;

TEST_CASE("default map covers 193 assemblies with the right multiplicities") {
  const auto g = CoreGeometry::default_w193();
  CHECK(g.total_assemblies() == 193);
  CHECK(g.num_locations() == 30);

  int interior = 0, line = 0;
  for (const auto& loc : g.locations())
    (loc.klass == LocationClass::Interior ? interior : line) += 1;
  CHECK(interior == 18);
  CHECK(line == 12);

  // Template slots: 88 fresh (+ center), 88 once, 16 twice.
  CHECK(g.slots(Role::Fresh) == 88);
  CHECK(g.slots(Role::Once) == 88);
  CHECK(g.slots(Role::Twice) == 16);
  CHECK(g.slots(Role::Fresh) + g.slots(Role::Once) + g.slots(Role::Twice) + 1 ==
        193);
}

TEST_CASE("orbits partition the core") {
  const auto g = CoreGeometry::default_w193();
  std::set<Coord> covered;
  covered.insert({0, 0});
  for (const auto& loc : g.locations()) {
    const auto orbit = g.orbit(loc.rep);
    CHECK(static_cast<int>(orbit.size()) == loc.multiplicity());
    for (const Coord& p : orbit) {
      CHECK(g.in_core(p));
      CHECK(covered.insert(p).second);  // no overlaps between orbits
    }
  }
  CHECK(static_cast<int>(covered.size()) == 193);
}

TEST_CASE("periphery ring: flags match the shape, twice-burned sit on it") {
  const auto g = CoreGeometry::default_w193();
  int periphery_assemblies = 0;
  for (const auto& loc : g.locations()) {
    CHECK(loc.periphery == g.is_periphery(loc.rep));
    if (loc.periphery) {
      periphery_assemblies += loc.multiplicity();
      CHECK(loc.role != Role::Fresh);
    }
    if (loc.role == Role::Twice) CHECK(loc.periphery);
  }
  CHECK(periphery_assemblies == 44);
}

TEST_CASE("array order: octant interior first, then lines from the diagonal") {
  const auto g = CoreGeometry::default_w193();
  const auto& locs = g.locations();
  int first_line = -1;
  for (int i = 0; i < g.num_locations(); ++i)
    if (locs[static_cast<std::size_t>(i)].klass == LocationClass::Line) {
      first_line = i;
      break;
    }
  REQUIRE(first_line == 18);
  for (int i = 0; i < first_line; ++i)
    CHECK(locs[static_cast<std::size_t>(i)].klass == LocationClass::Interior);
  // Diagonal entries precede axis entries within the line block.
  bool seen_axis = false;
  for (int i = first_line; i < g.num_locations(); ++i) {
    const auto& loc = locs[static_cast<std::size_t>(i)];
    const bool diagonal = loc.rep.row == loc.rep.col;
    if (!diagonal) seen_axis = true;
    if (diagonal) CHECK(!seen_axis);
  }
}

TEST_CASE("geometry JSON round-trips") {
  const auto g = CoreGeometry::default_w193();
  const auto j = g.to_json();
  const auto g2 = CoreGeometry::from_json(j);
  CHECK(g2.to_json() == j);
  CHECK(g2.total_assemblies() == 193);
}

TEST_CASE("malformed geometries are rejected") {
  auto j = CoreGeometry::default_w193().to_json();
  auto bad = j;
  bad["locations"][0]["role"] = "stale";
  CHECK_THROWS_AS(CoreGeometry::from_json(bad), lprl::ConfigError);

  bad = j;
  bad["locations"][0]["row"] = 9;  // outside the lattice
  CHECK_THROWS_AS(CoreGeometry::from_json(bad), lprl::ConfigError);

  bad = j;
  bad["locations"].erase(0);  // octant not covered
  CHECK_THROWS_AS(CoreGeometry::from_json(bad), lprl::ConfigError);

  bad = j;
  // Fresh on the periphery is rejected at the template level.
  for (auto& loc : bad["locations"])
    if (loc["periphery"].get<bool>()) loc["role"] = "fresh";
  CHECK_THROWS_AS(CoreGeometry::from_json(bad), lprl::ConfigError);
}
