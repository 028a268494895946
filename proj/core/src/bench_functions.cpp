#include "lprl/bench/functions.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lprl/errors.hpp"

namespace lprl::bench {

Function function_from_name(const std::string& name) {
  if (name == "sphere") return Function::Sphere;
  if (name == "rosenbrock_sr") return Function::RosenbrockSR;
  if (name == "rastrigin_sr") return Function::RastriginSR;
  if (name == "schaffer_f6_sr") return Function::SchafferF6SR;
  throw ConfigError("unknown benchmark function: " + name);
}

std::string function_name(Function f) {
  switch (f) {
    case Function::Sphere: return "sphere";
    case Function::RosenbrockSR: return "rosenbrock_sr";
    case Function::RastriginSR: return "rastrigin_sr";
    case Function::SchafferF6SR: return "schaffer_f6_sr";
  }
  return "?";
}

double BenchmarkSpec::offset() const {
  switch (function) {
    case Function::Sphere: return 0.0;
    case Function::RosenbrockSR: return 400.0;
    case Function::RastriginSR: return 500.0;
    case Function::SchafferF6SR: return 600.0;
  }
  return 0.0;
}

double BenchmarkSpec::orthogonality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      double dot = 0.0;
      for (int k = 0; k < nx; ++k)
        dot += rotation[static_cast<std::size_t>(k) * nx + i] *
               rotation[static_cast<std::size_t>(k) * nx + j];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

BenchmarkSpec make_benchmark(Function function, int nx, std::uint64_t seed) {
  if (nx < 1) throw ConfigError("benchmark nx must be >= 1");
  BenchmarkSpec spec;
  spec.function = function;
  spec.nx = nx;
  spec.bound = (function == Function::Sphere) ? 35 : 100;
  spec.seed = seed;

  Rng rng = Rng::seeded(Rng::mix(seed, 0xbe9c));
  const int shift_max = static_cast<int>(0.8 * spec.bound) - 1;
  spec.shift.resize(static_cast<std::size_t>(nx));
  for (double& o : spec.shift)
    o = static_cast<double>(
        static_cast<long long>(rng.uniform_int(2 * shift_max + 1)) - shift_max);

  // Orthogonal matrix: Gram-Schmidt rows of a Gaussian draw.
  spec.rotation.assign(static_cast<std::size_t>(nx) * nx, 0.0);
  for (double& m : spec.rotation) m = rng.normal();
  for (int r = 0; r < nx; ++r) {
    double* vr = spec.rotation.data() + static_cast<std::size_t>(r) * nx;
    for (int p = 0; p < r; ++p) {
      const double* vp = spec.rotation.data() + static_cast<std::size_t>(p) * nx;
      double dot = 0.0;
      for (int c = 0; c < nx; ++c) dot += vr[c] * vp[c];
      for (int c = 0; c < nx; ++c) vr[c] -= dot * vp[c];
    }
    // Re-orthogonalize once; plain Gram-Schmidt alone drifts above the
    // 1e-10 defect budget for nx ~ 10.
    for (int p = 0; p < r; ++p) {
      const double* vp = spec.rotation.data() + static_cast<std::size_t>(p) * nx;
      double dot = 0.0;
      for (int c = 0; c < nx; ++c) dot += vr[c] * vp[c];
      for (int c = 0; c < nx; ++c) vr[c] -= dot * vp[c];
    }
    double norm = 0.0;
    for (int c = 0; c < nx; ++c) norm += vr[c] * vr[c];
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      for (int c = 0; c < nx; ++c) vr[c] = rng.normal();
      --r;
      continue;
    }
    for (int c = 0; c < nx; ++c) vr[c] /= norm;
  }
  return spec;
}

namespace {

std::vector<double> read_numbers(const std::string& path, std::size_t expect) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file: " + path);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (values.size() < expect) {
    std::ostringstream os;
    os << path << ": expected " << expect << " numbers, found " << values.size();
    throw ConfigError(os.str());
  }
  values.resize(expect);
  return values;
}

}  // namespace

void load_shift_file(BenchmarkSpec& spec, const std::string& path) {
  spec.shift = read_numbers(path, static_cast<std::size_t>(spec.nx));
}

void load_rotation_file(BenchmarkSpec& spec, const std::string& path) {
  spec.rotation =
      read_numbers(path, static_cast<std::size_t>(spec.nx) * spec.nx);
  if (spec.orthogonality_defect() > 1e-8)
    throw ConfigError(path + ": matrix is not orthogonal");
}

double eval_benchmark(const BenchmarkSpec& spec, std::span<const int> x) {
  if (static_cast<int>(x.size()) != spec.nx)
    throw ConfigError("benchmark input dimension mismatch");
  for (int xi : x)
    if (xi < -spec.bound || xi > spec.bound)
      throw ConfigError("benchmark input outside [-B, B]");

  double rate = 1.0;
  switch (spec.function) {
    case Function::RosenbrockSR: rate = 2.048 / 100.0; break;
    case Function::RastriginSR: rate = 5.12 / 100.0; break;
    default: break;
  }

  const int n = spec.nx;
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[i] = (x[i] - spec.shift[i]) * rate;
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) {
    const double* row = spec.rotation.data() + static_cast<std::size_t>(r) * n;
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += row[c] * y[c];
    z[r] = acc;
  }

  const double two_pi = 2.0 * 3.14159265358979323846;
  double f = 0.0;
  switch (spec.function) {
    case Function::Sphere:
      for (double zi : z) f += zi * zi;
      break;
    case Function::RosenbrockSR: {
      for (double& zi : z) zi += 1.0;  // move the optimum to the origin
      for (int i = 0; i + 1 < n; ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        f += 100.0 * a * a + b * b;
      }
      break;
    }
    case Function::RastriginSR:
      for (double zi : z) f += zi * zi - 10.0 * std::cos(two_pi * zi) + 10.0;
      break;
    case Function::SchafferF6SR: {
      auto g = [](double a, double b) {
        const double s = a * a + b * b;
        const double sn = std::sin(std::sqrt(s));
        const double den = 1.0 + 0.001 * s;
        return 0.5 + (sn * sn - 0.5) / (den * den);
      };
      for (int i = 0; i < n; ++i) f += g(z[i], z[(i + 1) % n]);
      break;
    }
  }
  return f + spec.offset();
}

}  // namespace lprl::bench
