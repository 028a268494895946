#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lprl/errors.hpp"
#include "lprl/rng.hpp"
#include "lprl/stats.hpp"
#include "stats_oracle_data.hpp"

using namespace lprl;
using namespace lprl::stats;

namespace {

Matrix from_case(const StatsOracleCase& c) {
  Matrix m(c.rows, c.cols);
  m.data = c.data;
  return m;
}

}  // namespace

TEST_CASE("friedman matches the reference implementation on 20 fixed matrices") {
  for (const auto& c : stats_oracle_cases()) {
    INFO("case ", c.name);
    const auto res = friedman(from_case(c));
    if (c.degenerate) {
      CHECK(res.degenerate);
      CHECK(res.p_value == 1.0);
    } else {
      CHECK(!res.degenerate);
      CHECK(std::abs(res.statistic - c.friedman_statistic) < 1e-6);
      CHECK(std::abs(res.p_value - c.friedman_p) < 1e-6);
    }
  }
}

TEST_CASE("nemenyi matches the reference on 20 fixed matrices within 1e-6") {
  for (const auto& c : stats_oracle_cases()) {
    INFO("case ", c.name);
    const auto p = nemenyi(from_case(c));
    REQUIRE(p.rows == c.cols);
    for (int i = 0; i < p.rows; ++i)
      for (int j = 0; j < p.cols; ++j)
        CHECK(std::abs(p.at(i, j) -
                       c.nemenyi_p[static_cast<std::size_t>(i) * c.cols + j]) <
              1e-6);
  }
}

TEST_CASE("identical columns: statistic 0, p = 1, off-diagonals at the clamp") {
  Matrix m(6, 4);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 4; ++c) m.at(r, c) = 3.25;
  const auto fr = friedman(m);
  CHECK(fr.degenerate);
  CHECK(fr.statistic == 0.0);
  CHECK(fr.p_value == 1.0);
  const auto nm = nemenyi(m);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(nm.at(i, j) == (i == j ? 1.0 : 0.9));
}

TEST_CASE("a uniformly dominant column over 10 blocks is significant") {
  Matrix m(10, 3);
  Rng rng = Rng::seeded(4);
  for (int r = 0; r < 10; ++r) {
    m.at(r, 0) = 100.0 + rng.uniform();
    m.at(r, 1) = rng.uniform();
    m.at(r, 2) = rng.uniform();
  }
  const auto fr = friedman(m);
  CHECK(fr.p_value < 0.01);
  const auto nm = nemenyi(m);
  CHECK(nm.at(0, 1) < 0.05);
  CHECK(nm.at(0, 2) < 0.05);
}

TEST_CASE("friedman is invariant under strictly monotone transformations") {
  Rng rng = Rng::seeded(9);
  Matrix m(8, 5);
  for (auto& v : m.data) v = 10.0 * rng.normal();
  const auto base = friedman(m);
  Matrix t = m;
  for (auto& v : t.data) v = std::exp(0.3 * v) - 7.0;  // strictly increasing
  const auto mapped = friedman(t);
  CHECK(base.statistic == doctest::Approx(mapped.statistic).epsilon(1e-12));
  CHECK(base.p_value == doctest::Approx(mapped.p_value).epsilon(1e-12));
}

TEST_CASE("nemenyi matrix is symmetric, unit diagonal, clamped, monotone") {
  Rng rng = Rng::seeded(10);
  Matrix m(10, 6);
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 6; ++c) m.at(r, c) = 10.0 * c + rng.normal();
  const auto nm = nemenyi(m);
  for (int i = 0; i < 6; ++i) {
    CHECK(nm.at(i, i) == 1.0);
    for (int j = 0; j < 6; ++j) {
      CHECK(nm.at(i, j) == nm.at(j, i));
      if (i != j) {
        CHECK(nm.at(i, j) >= 0.001);
        CHECK(nm.at(i, j) <= 0.9);
      }
    }
  }
  // Columns are ordered by construction: wider separation, smaller p.
  CHECK(nm.at(0, 5) <= nm.at(0, 1));
}

TEST_CASE("preconditions: block and treatment minimums") {
  Matrix one_block(1, 4);
  CHECK_THROWS_AS(friedman(one_block), ConfigError);
  Matrix two_cols(5, 2);
  CHECK_THROWS_AS(friedman(two_cols), ConfigError);
  CHECK_THROWS_AS(nemenyi(two_cols), ConfigError);
}

TEST_CASE("chi-square tail sanity") {
  CHECK(chi2_sf(0.0, 3.0) == 1.0);
  // Reference values from the usual tables.
  CHECK(chi2_sf(7.814727903251179, 3.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_sf(12.591587243743977, 6.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_sf(1e4, 2.0) < 1e-300);
}

TEST_CASE("studentized range CDF endpoints and known quantiles") {
  CHECK(studentized_range_cdf(0.0, 5) == 0.0);
  CHECK(studentized_range_cdf(-1.0, 5) == 0.0);
  CHECK(studentized_range_cdf(50.0, 5) == doctest::Approx(1.0).epsilon(1e-10));
  // q_{0.95}(k=3, inf) = 3.314493...; q_{0.95}(k=7, inf) = 4.17021...
  CHECK(1.0 - studentized_range_cdf(3.3144930, 3) ==
        doctest::Approx(0.05).epsilon(1e-5));
  CHECK(1.0 - studentized_range_cdf(4.1702097, 7) ==
        doctest::Approx(0.05).epsilon(1e-5));
}

TEST_CASE("wilcoxon signed-rank: separation vs noise") {
  std::vector<double> base(20), better(20), same(20);
  Rng rng = Rng::seeded(20);
  for (int i = 0; i < 20; ++i) {
    base[static_cast<std::size_t>(i)] = rng.normal();
    better[static_cast<std::size_t>(i)] =
        base[static_cast<std::size_t>(i)] + 1.5 + 0.1 * rng.normal();
    same[static_cast<std::size_t>(i)] =
        base[static_cast<std::size_t>(i)] + 0.01 * rng.normal();
  }
  CHECK(wilcoxon_signed_rank_greater(base, better) < 0.001);
  CHECK(wilcoxon_signed_rank_greater(base, same) > 0.05);
  CHECK(wilcoxon_signed_rank_greater(base, base) == 1.0);
}
