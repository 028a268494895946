#include "lprl/bench/env.hpp"

namespace lprl::bench {

BenchmarkEnvironment::BenchmarkEnvironment(BenchmarkSpec spec)
    : spec_(std::move(spec)) {
  action_spec_.cardinalities.assign(static_cast<std::size_t>(spec_.nx),
                                    2 * spec_.bound + 1);
}

Candidate BenchmarkEnvironment::evaluate(std::span<const int> action, Rng&) {
  std::vector<int> x(static_cast<std::size_t>(spec_.nx));
  for (int i = 0; i < spec_.nx; ++i) x[i] = action[i] - spec_.bound;
  const double f = eval_benchmark(spec_, x);

  Candidate c;
  c.objective = -f;
  c.embedding.resize(static_cast<std::size_t>(spec_.nx));
  for (int i = 0; i < spec_.nx; ++i)
    c.embedding[i] =
        static_cast<double>(x[i] + spec_.bound) / (2.0 * spec_.bound);
  c.payload = {{"x", x}, {"f", f}};
  c.info["f"] = f;
  return c;
}

std::unique_ptr<Environment> BenchmarkEnvironment::clone() const {
  return std::make_unique<BenchmarkEnvironment>(spec_);
}

}  // namespace lprl::bench
