#include "lprl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lprl/errors.hpp"

namespace lprl::stats {

namespace {

// Regularized incomplete gamma functions, series + continued fraction split.
double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Q(a, x) = upper regularized incomplete gamma.
double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw ContractViolation("gammq: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_cf(a, x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
}

// Per-block ranks with ties sharing their average rank.
void rank_row(const double* row, int k, double* ranks, double& tie_term) {
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return row[a] < row[b]; });
  int i = 0;
  while (i < k) {
    int j = i;
    while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;  // ranks are 1-based
    for (int t = i; t <= j; ++t) ranks[order[t]] = avg;
    const double run = j - i + 1;
    tie_term += run * run * run - run;
    i = j + 1;
  }
}

}  // namespace

double chi2_sf(double x, double k) {
  if (x <= 0.0) return 1.0;
  return gammq(k / 2.0, x / 2.0);
}

FriedmanResult friedman(const Matrix& m) {
  const int n = m.rows, k = m.cols;
  if (n < 2) throw ConfigError("friedman: need at least 2 blocks");
  if (k < 3) throw ConfigError("friedman: need at least 3 treatments");

  std::vector<double> rank_sums(static_cast<std::size_t>(k), 0.0);
  std::vector<double> ranks(static_cast<std::size_t>(k));
  double tie_term = 0.0;
  for (int r = 0; r < n; ++r) {
    rank_row(m.data.data() + static_cast<std::size_t>(r) * k, k, ranks.data(),
             tie_term);
    for (int c = 0; c < k; ++c) rank_sums[c] += ranks[c];
  }

  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double correction = 1.0 - tie_term / (nn * (kk * kk * kk - kk));

  FriedmanResult out;
  if (correction <= 0.0) {  // every block fully tied
    out.statistic = 0.0;
    out.p_value = 1.0;
    out.degenerate = true;
    return out;
  }
  double sum_sq = 0.0;
  for (double rs : rank_sums) sum_sq += rs * rs;
  double stat = 12.0 / (nn * kk * (kk + 1.0)) * sum_sq - 3.0 * nn * (kk + 1.0);
  stat /= correction;
  out.statistic = stat;
  out.p_value = chi2_sf(stat, kk - 1.0);
  return out;
}

double studentized_range_cdf(double q, int k) {
  if (q <= 0.0) return 0.0;
  if (k < 2) throw ContractViolation("studentized range: k must be >= 2");

  // integrand(z) = k phi(z) [Phi(z) - Phi(z - q)]^(k-1)
  auto f = [&](double z) {
    const double inner = normal_cdf(z) - normal_cdf(z - q);
    return k * normal_pdf(z) * std::pow(inner, k - 1);
  };

  // Adaptive Simpson over a window that covers all non-negligible mass.
  const double lo = -9.0, hi = 9.0 + q;
  struct Seg {
    double a, b, fa, fm, fb, whole;
  };
  auto simpson = [&](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };
  double total = 0.0;
  std::vector<Seg> work;
  // Seed with enough panels that narrow features are never missed.
  const int seed_panels = 64;
  for (int i = 0; i < seed_panels; ++i) {
    const double a = lo + (hi - lo) * i / seed_panels;
    const double b = lo + (hi - lo) * (i + 1) / seed_panels;
    const double mid = 0.5 * (a + b);
    Seg s{a, b, f(a), f(mid), f(b), 0.0};
    s.whole = simpson(s.a, s.b, s.fa, s.fm, s.fb);
    work.push_back(s);
  }
  const double tol = 1e-10;
  int evals = 0;
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    const double m1 = 0.5 * (s.a + 0.5 * (s.a + s.b));
    const double m2 = 0.5 * (0.5 * (s.a + s.b) + s.b);
    const double fm1 = f(m1), fm2 = f(m2);
    evals += 2;
    const double mid = 0.5 * (s.a + s.b);
    const double left = simpson(s.a, mid, s.fa, fm1, s.fm);
    const double right = simpson(mid, s.b, s.fm, fm2, s.fb);
    if (std::abs(left + right - s.whole) < 15.0 * tol || evals > 200000 ||
        (s.b - s.a) < 1e-12) {
      total += left + right + (left + right - s.whole) / 15.0;
    } else {
      work.push_back({s.a, mid, s.fa, fm1, s.fm, left});
      work.push_back({mid, s.b, s.fm, fm2, s.fb, right});
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

Matrix nemenyi(const Matrix& m) {
  const int n = m.rows, k = m.cols;
  if (n < 2) throw ConfigError("nemenyi: need at least 2 blocks");
  if (k < 3) throw ConfigError("nemenyi: need at least 3 treatments");

  std::vector<double> mean_ranks(static_cast<std::size_t>(k), 0.0);
  std::vector<double> ranks(static_cast<std::size_t>(k));
  double tie_term = 0.0;
  for (int r = 0; r < n; ++r) {
    rank_row(m.data.data() + static_cast<std::size_t>(r) * k, k, ranks.data(),
             tie_term);
    for (int c = 0; c < k; ++c) mean_ranks[c] += ranks[c] / n;
  }

  const double scale = std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * n));
  Matrix p(k, k);
  for (int i = 0; i < k; ++i) p.at(i, i) = 1.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double qval =
          std::abs(mean_ranks[i] - mean_ranks[j]) / scale * std::sqrt(2.0);
      double pv = 1.0 - studentized_range_cdf(qval, k);
      pv = std::clamp(pv, 0.001, 0.9);
      p.at(i, j) = pv;
      p.at(j, i) = pv;
    }
  return p;
}

double wilcoxon_signed_rank_greater(const std::vector<double>& first,
                                    const std::vector<double>& second) {
  if (first.size() != second.size() || first.empty())
    throw ContractViolation("wilcoxon: mismatched samples");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double d = second[i] - first[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const int n = static_cast<int>(diffs.size());
  if (n == 0) return 1.0;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(diffs[a]) < std::abs(diffs[b]);
  });
  std::vector<double> rank(static_cast<std::size_t>(n));
  double tie_var = 0.0;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n &&
           std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]]))
      ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (int t = i; t <= j; ++t) rank[order[t]] = avg;
    const double run = j - i + 1;
    tie_var += run * run * run - run;
    i = j + 1;
  }
  double w_plus = 0.0;
  for (int t = 0; t < n; ++t)
    if (diffs[t] > 0.0) w_plus += rank[t];

  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_var / 48.0;
  if (var <= 0.0) return w_plus > mean ? 0.0 : 1.0;
  const double z = (w_plus - mean - 0.5) / std::sqrt(var);  // continuity corr.
  return 1.0 - normal_cdf(z);
}

}  // namespace lprl::stats
