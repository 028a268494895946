#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lprl/rng.hpp"

namespace lprl::bench {

enum class Function { Sphere, RosenbrockSR, RastriginSR, SchafferF6SR };

Function function_from_name(const std::string& name);  // throws ConfigError
std::string function_name(Function f);

/// Integer-grid benchmark instance. The domain is the integer lattice
/// [-bound, bound]^nx; the shift vector lives on the grid so the global
/// optimum is exactly representable, and the conventional offset (f* = 400,
/// 500, 600 for the rotated functions, 0 for Sphere) is added to the value.
struct BenchmarkSpec {
  Function function = Function::Sphere;
  int nx = 2;
  int bound = 35;
  std::uint64_t seed = 0;
  std::vector<double> shift;     // o, integral components in (-0.8B, 0.8B)
  std::vector<double> rotation;  // M, nx x nx row-major, orthogonal

  double offset() const;
  /// Max abs entry of M^T M - I; the construction keeps this below 1e-10.
  double orthogonality_defect() const;
};

/// Deterministically builds shift and rotation from the seed (Gram-Schmidt on
/// a Gaussian draw). bound defaults to 35 for Sphere and 100 otherwise.
BenchmarkSpec make_benchmark(Function function, int nx, std::uint64_t seed);

/// Replaces shift/rotation with data from CEC-style whitespace-separated text
/// files (shift: nx values; rotation: nx*nx values, row-major).
void load_shift_file(BenchmarkSpec& spec, const std::string& path);
void load_rotation_file(BenchmarkSpec& spec, const std::string& path);

/// f(x) for integer x in [-bound, bound]^nx; throws ConfigError out of bounds.
double eval_benchmark(const BenchmarkSpec& spec, std::span<const int> x);

}  // namespace lprl::bench
