#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lprl/errors.hpp"
#include "lprl/net.hpp"
#include "test_helpers.hpp"

using namespace lprl;
using lprl_test::QuadraticEnv;

namespace {

EpisodeEnv make_env(int nf) {
  return EpisodeEnv(std::make_unique<QuadraticEnv>(std::vector<int>{5, 5},
                                                   std::vector<int>{2, 3}),
                    nf);
}

}  // namespace

TEST_CASE("reset returns zeros before anything was evaluated") {
  BestTracker tracker;
  auto env = make_env(1);
  const Observation obs = env.reset(tracker);
  CHECK(obs == Observation{0.0, 0.0});
}

TEST_CASE("reset returns the best embedding afterwards, and is idempotent") {
  BestTracker tracker;
  auto env = make_env(1);
  Rng rng = Rng::seeded(1);
  env.reset(tracker);
  env.step(std::vector<int>{1, 1}, tracker, rng);
  const Observation snap = tracker.best_observation();
  const Observation o1 = env.reset(tracker);
  const Observation o2 = env.reset(tracker);
  CHECK(o1 == snap);
  CHECK(o1 == o2);
}

TEST_CASE("done exactly at NF steps") {
  BestTracker tracker;
  Rng rng = Rng::seeded(2);
  for (int nf : {1, 3, 7}) {
    auto env = make_env(nf);
    env.reset(tracker);
    for (int t = 1; t <= nf; ++t) {
      const auto sr = env.step(std::vector<int>{0, 0}, tracker, rng);
      CHECK(sr.done == (t == nf));
    }
  }
}

TEST_CASE("tracker keeps the best and its sample index; ties keep the first") {
  BestTracker tracker;
  auto env = make_env(1);
  Rng rng = Rng::seeded(3);
  env.reset(tracker);
  env.step(std::vector<int>{0, 0}, tracker, rng);  // objective -13
  CHECK(tracker.best_objective() == doctest::Approx(-13.0));
  CHECK(tracker.samples_at_best() == 1);

  env.reset(tracker);
  env.step(std::vector<int>{2, 3}, tracker, rng);  // optimum, objective 0
  CHECK(tracker.best_objective() == doctest::Approx(0.0));
  CHECK(tracker.samples_at_best() == 2);

  env.reset(tracker);
  env.step(std::vector<int>{2, 3}, tracker, rng);  // tie: not an improvement
  CHECK(tracker.samples_at_best() == 2);
  CHECK(tracker.samples_seen() == 3);
}

TEST_CASE("best objective is monotone over random action streams") {
  BestTracker tracker;
  auto env = make_env(2);
  Rng rng = Rng::seeded(4);
  env.reset(tracker);
  double last = -1e300;
  for (int t = 0; t < 200; ++t) {
    const std::vector<int> a = {static_cast<int>(rng.uniform_int(5)),
                                static_cast<int>(rng.uniform_int(5))};
    const auto sr = env.step(a, tracker, rng);
    CHECK(tracker.best_objective() >= last);
    CHECK(tracker.best_objective() >= sr.reward);
    last = tracker.best_objective();
    if (sr.done) env.reset(tracker);
  }
  CHECK(tracker.samples_seen() == 200);
  CHECK(tracker.samples_at_best() <= 200);
}

TEST_CASE("out-of-range action components are rejected") {
  BestTracker tracker;
  auto env = make_env(1);
  Rng rng = Rng::seeded(5);
  env.reset(tracker);
  CHECK_THROWS_AS(env.step(std::vector<int>{5, 0}, tracker, rng),
                  ContractViolation);
  CHECK_THROWS_AS(env.step(std::vector<int>{0, -1}, tracker, rng),
                  ContractViolation);
  CHECK_THROWS_AS(env.step(std::vector<int>{0}, tracker, rng),
                  ContractViolation);
}

TEST_CASE("run_episode produces NF-length trajectories, reproducibly") {
  BestTracker tracker;
  Rng net_rng = Rng::seeded(6);
  auto env = make_env(7);
  const auto net = PolicyValueNet::init(env.observation_size(),
                                        env.action_spec(), 8, 2, net_rng);
  Rng rng_a = Rng::seeded(123);
  const auto traj = run_episode(net, env, tracker, rng_a);
  REQUIRE(traj.size() == 7);

  BestTracker tracker2;
  auto env2 = make_env(7);
  Rng rng_b = Rng::seeded(123);
  const auto traj2 = run_episode(net, env2, tracker2, rng_b);
  REQUIRE(traj2.size() == 7);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj[i].action == traj2[i].action);
    CHECK(traj[i].reward == traj2[i].reward);
    CHECK(traj[i].logprob == traj2[i].logprob);
  }

  auto env1 = make_env(1);
  BestTracker t1;
  Rng rng_c = Rng::seeded(9);
  CHECK(run_episode(net, env1, t1, rng_c).size() == 1);
}

TEST_CASE("reset coupling for NF=1: next episode starts from the best so far") {
  BestTracker tracker;
  auto env = make_env(1);
  Rng rng = Rng::seeded(7);
  Observation obs = env.reset(tracker);
  for (int episode = 0; episode < 50; ++episode) {
    const std::vector<int> a = {static_cast<int>(rng.uniform_int(5)),
                                static_cast<int>(rng.uniform_int(5))};
    const auto sr = env.step(a, tracker, rng);
    REQUIRE(sr.done);
    obs = env.reset(tracker);
    CHECK(obs == tracker.best_observation());
  }
}
