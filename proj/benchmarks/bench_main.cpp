#include <benchmark/benchmark.h>

#include "lprl/bench/env.hpp"
#include "lprl/ppo.hpp"
#include "lprl/pwr/env.hpp"
#include "lprl/stats.hpp"

using namespace lprl;

namespace {

void BM_DecodeAction(benchmark::State& state) {
  const auto problem = pwr::PwrProblem::defaults(0);
  const auto spec = pwr::build_action_spec(problem.geometry, problem.inventory,
                                           problem.catalog);
  Rng action_rng = Rng::seeded(1), decode_rng = Rng::seeded(2);
  std::vector<int> a(static_cast<std::size_t>(spec.dims()));
  for (auto _ : state) {
    for (int i = 0; i < spec.dims(); ++i)
      a[static_cast<std::size_t>(i)] =
          static_cast<int>(action_rng.uniform_int(spec.cardinalities[i]));
    benchmark::DoNotOptimize(pwr::decode_action(
        a, problem.geometry, problem.inventory, problem.catalog, decode_rng));
  }
}
BENCHMARK(BM_DecodeAction);

void BM_SurrogateEvaluate(benchmark::State& state) {
  const auto problem = pwr::PwrProblem::defaults(0);
  const auto spec = pwr::build_action_spec(problem.geometry, problem.inventory,
                                           problem.catalog);
  Rng rng = Rng::seeded(3);
  std::vector<int> a(static_cast<std::size_t>(spec.dims()));
  for (int i = 0; i < spec.dims(); ++i)
    a[static_cast<std::size_t>(i)] =
        static_cast<int>(rng.uniform_int(spec.cardinalities[i]));
  const auto pattern = pwr::decode_action(a, problem.geometry,
                                          problem.inventory, problem.catalog,
                                          rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(pwr::surrogate_evaluate(
        pattern, problem.geometry, problem.inventory, problem.catalog,
        problem.surrogate));
}
BENCHMARK(BM_SurrogateEvaluate);

void BM_FullPwrCandidate(benchmark::State& state) {
  auto problem = std::make_shared<pwr::PwrProblem>(pwr::PwrProblem::defaults(0));
  pwr::PwrEnvironment env(problem);
  Rng rng = Rng::seeded(4);
  const auto& spec = env.action_spec();
  std::vector<int> a(static_cast<std::size_t>(spec.dims()));
  for (auto _ : state) {
    for (int i = 0; i < spec.dims(); ++i)
      a[static_cast<std::size_t>(i)] =
          static_cast<int>(rng.uniform_int(spec.cardinalities[i]));
    benchmark::DoNotOptimize(env.evaluate(a, rng));
  }
}
BENCHMARK(BM_FullPwrCandidate);

void BM_PpoUpdate(benchmark::State& state) {
  const int obs_len = static_cast<int>(state.range(0));
  ActionSpec spec{{24, 24, 24, 24, 8, 7, 6, 5}};
  Rng rng = Rng::seeded(5);
  auto net = PolicyValueNet::init(obs_len, spec, 64, 2, rng);
  AdamOptimizer adam(net.param_count());
  HyperParams hp;
  hp.ncores = 8;
  hp.n_steps = 4;
  RolloutBuffer buffer(8, 4, obs_len, spec.dims());
  for (int i = 0; i < buffer.size(); ++i) {
    Observation obs(static_cast<std::size_t>(obs_len));
    for (auto& x : obs) x = rng.normal();
    const auto s = net.sample(obs, rng);
    std::copy(obs.begin(), obs.end(),
              buffer.observations.begin() + static_cast<std::size_t>(i) * obs_len);
    std::copy(s.action.begin(), s.action.end(),
              buffer.actions.begin() + static_cast<std::size_t>(i) * spec.dims());
    buffer.logprobs[i] = s.logprob;
    buffer.values[i] = s.value;
    buffer.rewards[i] = rng.normal();
    buffer.dones[i] = 1;
  }
  compute_gae(buffer, 0.99, 0.95);
  Rng shuffle = Rng::seeded(6);
  for (auto _ : state)
    benchmark::DoNotOptimize(update(net, adam, buffer, hp, 2.5e-4, shuffle));
}
BENCHMARK(BM_PpoUpdate)->Arg(64)->Arg(210);

void BM_StudentizedRangeCdf(benchmark::State& state) {
  double q = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::studentized_range_cdf(q, 7));
    q = q < 6.0 ? q + 0.25 : 0.5;
  }
}
BENCHMARK(BM_StudentizedRangeCdf);

}  // namespace

BENCHMARK_MAIN();
