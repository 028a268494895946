#pragma once

#include <vector>

namespace lprl::stats {

/// Dense row-major matrix of measurements: rows = blocks (seeds/experiments),
/// columns = treatments (hyper-parameter instances).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct FriedmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // every block fully tied; p forced to 1
};

/// Friedman rank test with tie correction, chi-square approximation with
/// k-1 degrees of freedom. Requires a complete matrix, >= 2 blocks and >= 3
/// treatments.
FriedmanResult friedman(const Matrix& m);

/// Nemenyi post-hoc pairwise p-values from the studentized range distribution
/// (infinite degrees of freedom), clamped to [0.001, 0.9] off-diagonal with a
/// unit diagonal, mirroring the reporting convention of the reference
/// post-hoc implementation.
Matrix nemenyi(const Matrix& m);

/// Upper tail of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, double k);

/// CDF of the studentized range distribution with nu = infinity, computed by
/// adaptive quadrature of k integral phi(z) [Phi(z) - Phi(z-q)]^(k-1) dz to
/// ~1e-8 absolute accuracy.
double studentized_range_cdf(double q, int k);

/// One-sided paired Wilcoxon signed-rank test (normal approximation with tie
/// handling): p-value for the alternative "second > first".
double wilcoxon_signed_rank_greater(const std::vector<double>& first,
                                    const std::vector<double>& second);

}  // namespace lprl::stats
