// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "lprl/analytics.hpp"
#include "lprl/bench/env.hpp"
#include "lprl/config.hpp"
#include "lprl/pwr/env.hpp"
#include "lprl/runner.hpp"
#include "lprl/stats.hpp"
#include "../stats_oracle_data.hpp"

using namespace lprl;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Criterion> g_results;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  g_results.push_back({id, name, pass, detail});
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": "
            << name << " — " << detail << "\n"
            << std::flush;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// Runs fn(i) for i in [0, n) over a small worker pool; each call independent.
void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  for (int w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += std::min(workers, n)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

HyperParams bench_hp(long long total_samples) {
  HyperParams hp;
  hp.ncores = 8;
  hp.n_steps = 4;
  hp.num_frames = 1;
  hp.ent_coef = 0.001;
  hp.total_samples = total_samples;
  return hp;
}

RunRecord train_benchmark(bench::Function fn, int nx, std::uint64_t seed,
                          const HyperParams& base_hp) {
  bench::BenchmarkEnvironment env(bench::make_benchmark(fn, nx, seed));
  HyperParams hp = base_hp;
  hp.seed = seed;
  RunRecord record;
  train(env, hp, record);
  return record;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// --- criterion 1 -----------------------------------------------------------

void criterion_global_optimum() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n_seeds = 20;
  int sphere_hits = 0, rastrigin_hits = 0;
  std::mutex m;
  parallel_for(2 * n_seeds, [&](int i) {
    const bool sphere = i < n_seeds;
    const std::uint64_t seed = static_cast<std::uint64_t>(i % n_seeds) + 1;
    const auto fn =
        sphere ? bench::Function::Sphere : bench::Function::RastriginSR;
    const auto record = train_benchmark(fn, 2, seed, bench_hp(10000));
    const double optimum = sphere ? 0.0 : -500.0;
    if (record.best_objective >= optimum - 1e-9) {
      std::lock_guard<std::mutex> lock(m);
      (sphere ? sphere_hits : rastrigin_hits)++;
    }
  });
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << "sphere " << sphere_hits << "/20, rastrigin " << rastrigin_hits
     << "/20 seeds at the exact grid optimum (threshold 18); " << elapsed
     << " s (target < 600)";
  report(1, "benchmark global optimum at 10k samples",
         sphere_hits >= 18 && rastrigin_hits >= 18 && elapsed < 600.0, os.str());
}

// --- criterion 2 -----------------------------------------------------------

void criterion_nf_ordering() {
  const int n_seeds = 20;
  const std::vector<int> nf_values = {1, 25, 100};
  std::vector<std::vector<RunRecord>> records(nf_values.size());
  for (auto& v : records) v.resize(n_seeds);
  parallel_for(static_cast<int>(nf_values.size()) * n_seeds, [&](int i) {
    const int t = i / n_seeds;
    const int s = i % n_seeds;
    auto hp = bench_hp(10000);
    hp.num_frames = nf_values[static_cast<std::size_t>(t)];
    records[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] =
        train_benchmark(bench::Function::Sphere, 2,
                        static_cast<std::uint64_t>(s) + 1, hp);
  });
  int n_gen = 100;
  for (const auto& group : records)
    for (const auto& r : group)
      n_gen = std::min(n_gen, static_cast<int>(r.episodes.size()));
  std::vector<double> medians;
  for (const auto& group : records) {
    std::vector<double> finals;
    for (const auto& r : group)
      finals.push_back(
          analytics::bin_generations(r, n_gen).mean_objective.back());
    medians.push_back(median(finals));
  }
  std::ostringstream os;
  os << "median final-generation mean objective: NF=1 " << medians[0]
     << ", NF=25 " << medians[1] << ", NF=100 " << medians[2] << " ("
     << n_gen << " generations)";
  report(2, "NF=1 dominates NF=25 and NF=100 on Sphere",
         medians[0] > medians[1] && medians[0] > medians[2], os.str());
}

// --- criterion 3 -----------------------------------------------------------

void criterion_entropy_failure() {
  const int n_seeds = 20;
  const std::vector<double> coefs = {0.1, 0.001};
  std::vector<std::vector<RunRecord>> records(coefs.size());
  for (auto& v : records) v.resize(n_seeds);
  parallel_for(static_cast<int>(coefs.size()) * n_seeds, [&](int i) {
    const int t = i / n_seeds;
    const int s = i % n_seeds;
    auto hp = bench_hp(20000);
    hp.ent_coef = coefs[static_cast<std::size_t>(t)];
    records[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] =
        train_benchmark(bench::Function::RastriginSR, 10,
                        static_cast<std::uint64_t>(s) + 1, hp);
  });
  std::vector<double> p_values;
  for (const auto& group : records) {
    std::vector<double> first, last;
    for (const auto& r : group) {
      const auto series = analytics::bin_generations(r, 100);
      first.push_back(series.mean_objective.front());
      last.push_back(series.mean_objective.back());
    }
    p_values.push_back(stats::wilcoxon_signed_rank_greater(first, last));
  }
  std::ostringstream os;
  os << "paired improvement p-values: ent_coef=0.1 -> " << p_values[0]
     << " (expect >= 0.05), ent_coef=0.001 -> " << p_values[1]
     << " (expect < 0.05)";
  report(3, "very high ent_coef prevents learning on func5 nx=10",
         p_values[0] >= 0.05 && p_values[1] < 0.05, os.str());
}

// --- criterion 4 -----------------------------------------------------------

void criterion_gradient_check() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = Rng::seeded(777);
  const double h = 1e-5;
  int checked = 0;
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const int obs_len = 2 + static_cast<int>(rng.uniform_int(4));
    const int width = 3 + static_cast<int>(rng.uniform_int(4));
    const int depth = 1 + static_cast<int>(rng.uniform_int(2));
    std::vector<int> cards = {2 + static_cast<int>(rng.uniform_int(4))};
    if (rng.uniform() < 0.6)
      cards.push_back(2 + static_cast<int>(rng.uniform_int(3)));
    ActionSpec spec{cards};
    auto net = PolicyValueNet::init(obs_len, spec, width, depth, rng);
    if (net.param_count() > 200) {
      --instance;
      continue;
    }
    auto old_net = net;
    for (auto& p : old_net.params()) p += 0.05 * rng.normal();

    const int batch = 3 + static_cast<int>(rng.uniform_int(5));
    RolloutBuffer buffer(1, batch, obs_len, spec.dims());
    std::vector<int> indices;
    std::vector<double> advantages;
    for (int t = 0; t < batch; ++t) {
      Observation obs(static_cast<std::size_t>(obs_len));
      for (auto& x : obs) x = rng.normal();
      const auto s = old_net.sample(obs, rng);
      std::copy(obs.begin(), obs.end(),
                buffer.observations.begin() +
                    static_cast<std::size_t>(t) * obs_len);
      std::copy(s.action.begin(), s.action.end(),
                buffer.actions.begin() + static_cast<std::size_t>(t) * spec.dims());
      buffer.logprobs[t] = s.logprob;
      buffer.returns[t] = rng.normal();
      indices.push_back(t);
      advantages.push_back(rng.normal());
    }
    MinibatchView mb{&buffer, indices, advantages};
    const double eps = 0.2, vf = 1.0, ent = 0.01;
    std::vector<double> grad(net.param_count(), 0.0);
    ppo_loss(net, mb, eps, vf, ent, grad);
    std::vector<double> scratch(net.param_count(), 0.0);
    for (std::size_t p = 0; p < net.param_count(); ++p) {
      const double orig = net.params()[p];
      net.params()[p] = orig + h;
      std::fill(scratch.begin(), scratch.end(), 0.0);
      const double lp = ppo_loss(net, mb, eps, vf, ent, scratch).loss;
      net.params()[p] = orig - h;
      std::fill(scratch.begin(), scratch.end(), 0.0);
      const double lm = ppo_loss(net, mb, eps, vf, ent, scratch).loss;
      net.params()[p] = orig;
      const double fd = (lp - lm) / (2.0 * h);
      const double rel = std::abs(grad[p] - fd) /
                         std::max({1.0, std::abs(grad[p]), std::abs(fd)});
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << checked << " parameters over 50 instances, worst relative error "
     << worst << " (tolerance 1e-4); " << elapsed << " s (target < 60)";
  report(4, "analytic PPO gradients match finite differences",
         worst < 1e-4 && elapsed < 60.0, os.str());
}

// --- criterion 5 -----------------------------------------------------------

void criterion_gae_identity() {
  Rng rng = Rng::seeded(555);
  bool exact = true, invariant = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int ncores = 1 + static_cast<int>(rng.uniform_int(4));
    const int n_steps = 1 + static_cast<int>(rng.uniform_int(16));
    RolloutBuffer buf(ncores, n_steps, 1, 1);
    for (int i = 0; i < buf.size(); ++i) {
      buf.rewards[i] = 1e3 * rng.normal();
      buf.values[i] = 1e3 * rng.normal();
      buf.dones[i] = 1;  // NF = 1
    }
    for (auto& b : buf.bootstrap_values) b = rng.normal();
    auto a = buf, b2 = buf;
    compute_gae(a, 0.99, 0.95);
    compute_gae(b2, 0.37 * rng.uniform(), rng.uniform());
    for (int i = 0; i < buf.size(); ++i) {
      if (a.advantages[i] != buf.rewards[i] - buf.values[i]) exact = false;
      if (a.advantages[i] != b2.advantages[i]) invariant = false;
    }
  }
  report(5, "GAE identity for one-step episodes", exact && invariant,
         exact ? "advantage == reward - value bitwise; gamma/lambda irrelevant"
               : "identity violated");
}

// --- criterion 6 -----------------------------------------------------------

void criterion_objective_feasibility() {
  const auto spec = pwr::ConstraintSpec::defaults();
  pwr::FomSet f;
  f.cycle_length_efpd = 512.0;
  f.fq = 1.80;
  f.fdh = 1.44;
  f.cb_ppm = 1150.0;
  f.pin_peak_bu = 61.0;
  bool ok = true;
  std::ostringstream os;
  for (auto [lcoe, expect] : {std::pair{5.569, -4.569}, {5.529, -4.529}}) {
    const auto res = pwr::objective(f, lcoe, spec, 2, 2);
    if (!res.feasible || std::abs(res.objective - expect) > 1e-12) ok = false;
    os << "LCOE " << lcoe << " -> " << res.objective << "; ";
  }
  Rng rng = Rng::seeded(321);
  for (int i = 0; i < 100; ++i) {
    const double lcoe = 4.0 + 3.0 * rng.uniform();
    const auto res = pwr::objective(f, lcoe, spec, 2, 2);
    if (std::abs(res.objective - (-lcoe + 1.0)) > 1e-12) ok = false;
  }
  os << "feasible objective == -LCOE + 1 on 100 random LCOEs (tol 1e-12)";
  report(6, "objective/feasibility oracle", ok, os.str());
}

// --- criterion 7 -----------------------------------------------------------

long double oracle_lcoe(double t_cy, const pwr::EconomicParams& econ,
                        const std::vector<pwr::CostClass>& classes,
                        double total_waba) {
  const long double r = econ.discount_rate;
  const long double t_lev =
      static_cast<long double>(t_cy) * econ.n_batchs / 365.25L;
  const long double k_f =
      econ.k_av *
      (1.0L - (static_cast<long double>(econ.t_fo_years) + econ.t_mo_years) /
                  t_lev);
  const long double lev =
      (r == 0.0L) ? 1.0L / t_lev : r / (1.0L - expl(-r * t_lev));
  long double fab_lead = 0.0L;
  for (const auto& s : econ.stages)
    if (s.name == "fabrication") fab_lead = s.lead_time_years;
  const long double waba_term = static_cast<long double>(total_waba) *
                                econ.waba_unit_cost * expl(-r * fab_lead) /
                                econ.core_mass_kgu;
  long double sum = 0.0L;
  for (const auto& cls : classes) {
    long double c = waba_term;
    for (std::size_t k = 0; k < econ.stages.size(); ++k)
      c += static_cast<long double>(cls.stage_costs[k]) *
           expl(-r * static_cast<long double>(econ.stages[k].lead_time_years));
    sum += static_cast<long double>(cls.alpha) * c / cls.burnup;
  }
  return (k_f * t_lev) / (econ.eta * k_f * 24.0L) * lev * sum;
}

void criterion_lcoe_oracle() {
  Rng rng = Rng::seeded(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    pwr::EconomicParams econ;
    econ.eta = 0.28 + 0.12 * rng.uniform();
    econ.k_av = 0.9 + 0.09 * rng.uniform();
    econ.t_fo_years = 0.04 + 0.06 * rng.uniform();
    econ.t_mo_years = 0.01 + 0.02 * rng.uniform();
    econ.n_batchs = 2 + static_cast<int>(rng.uniform_int(3));
    econ.discount_rate = 0.01 + 0.12 * rng.uniform();
    econ.waba_unit_cost = 800.0 + 1400.0 * rng.uniform();
    econ.core_mass_kgu = 60000.0 + 50000.0 * rng.uniform();
    for (auto& s : econ.stages) s.lead_time_years += 0.4 * rng.normal();

    std::vector<pwr::CostClass> classes(1 + rng.uniform_int(5));
    double alpha_sum = 0.0;
    for (auto& c : classes) {
      c.alpha = 0.05 + rng.uniform();
      alpha_sum += c.alpha;
      c.burnup = 25.0 + 45.0 * rng.uniform();
      for (std::size_t k = 0; k < econ.stages.size(); ++k)
        c.stage_costs.push_back(50.0 + 2000.0 * rng.uniform());
    }
    for (auto& c : classes) c.alpha /= alpha_sum;
    const double t_cy = 380.0 + 250.0 * rng.uniform();
    const double waba = 2000.0 * rng.uniform();
    const double got = pwr::lcoe_core(t_cy, econ, classes, waba);
    const long double want = oracle_lcoe(t_cy, econ, classes, waba);
    worst = std::max(worst, std::abs(got - static_cast<double>(want)) /
                                std::abs(static_cast<double>(want)));
  }

  pwr::EconomicParams econ;
  std::vector<pwr::CostClass> classes(2);
  for (auto& c : classes) {
    c.alpha = 0.5;
    c.burnup = 50.0;
    c.stage_costs = {1000.0, 600.0, 300.0, 600.0};
  }
  econ.discount_rate = 1e-9;
  const double near_zero = pwr::lcoe_core(500.0, econ, classes, 1000.0);
  econ.discount_rate = 0.0;
  const double limit = pwr::lcoe_core(500.0, econ, classes, 1000.0);
  const double r0_err = std::abs(near_zero - limit) / std::abs(limit);

  std::ostringstream os;
  os << "worst relative error " << worst
     << " over 100 random parameter sets (tol 1e-10); r->0 continuity error "
     << r0_err << " (tol 1e-6)";
  report(7, "levelized cost matches the extended-precision transcription",
         worst < 1e-10 && r0_err < 1e-6, os.str());
}

// --- criterion 8 -----------------------------------------------------------

void criterion_decoder_totality() {
  const auto problem = pwr::PwrProblem::defaults(0);
  const auto spec = pwr::build_action_spec(problem.geometry, problem.inventory,
                                           problem.catalog);
  int violations = 0;
  long long decoded = 0;
  // Adversarial RNG streams: several decode streams, including one that is
  // re-seeded every step and one shared with the action draw.
  Rng action_rng = Rng::seeded(808);
  Rng decode_a = Rng::seeded(1);
  Rng decode_b = Rng::seeded(0xFFFFFFFFull);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<int> a(static_cast<std::size_t>(spec.dims()));
    for (int i = 0; i < spec.dims(); ++i)
      a[static_cast<std::size_t>(i)] =
          static_cast<int>(action_rng.uniform_int(spec.cardinalities[i]));
    Rng* rng = nullptr;
    switch (trial % 4) {
      case 0: rng = &decode_a; break;
      case 1: rng = &decode_b; break;
      case 2: rng = &action_rng; break;
      default: {
        static Rng fresh(0);
        fresh = Rng::seeded(static_cast<std::uint64_t>(trial));
        rng = &fresh;
        break;
      }
    }
    const auto p = pwr::decode_action(a, problem.geometry, problem.inventory,
                                      problem.catalog, *rng);
    ++decoded;
    if (!pwr::check_structural(p, problem.geometry, problem.inventory,
                               problem.catalog)
             .empty())
      ++violations;
  }
  std::ostringstream os;
  os << decoded << " random actions decoded, " << violations
     << " structural violations (require 0)";
  report(8, "decoder totality under adversarial RNG streams", violations == 0,
         os.str());
}

// --- criterion 9 -----------------------------------------------------------

void criterion_statistics_oracle() {
  double worst = 0.0;
  bool degenerate_ok = true;
  int cases = 0;
  for (const auto& c : stats_oracle_cases()) {
    ++cases;
    stats::Matrix m(c.rows, c.cols);
    m.data = c.data;
    const auto fr = stats::friedman(m);
    if (c.degenerate) {
      if (!fr.degenerate || fr.p_value != 1.0) degenerate_ok = false;
      const auto nm = stats::nemenyi(m);
      for (int i = 0; i < nm.rows; ++i)
        for (int j = 0; j < nm.cols; ++j)
          if (nm.at(i, j) != (i == j ? 1.0 : 0.9)) degenerate_ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(fr.statistic - c.friedman_statistic));
    worst = std::max(worst, std::abs(fr.p_value - c.friedman_p));
    const auto nm = stats::nemenyi(m);
    for (int i = 0; i < nm.rows; ++i)
      for (int j = 0; j < nm.cols; ++j)
        worst = std::max(
            worst, std::abs(nm.at(i, j) -
                            c.nemenyi_p[static_cast<std::size_t>(i) * c.cols + j]));
  }
  std::ostringstream os;
  os << cases << " fixed matrices, worst deviation from the reference " << worst
     << " (tol 1e-6); degenerate case "
     << (degenerate_ok ? "exact" : "WRONG");
  report(9, "Friedman/Nemenyi match the reference implementation",
         worst < 1e-6 && degenerate_ok, os.str());
}

// --- criterion 10 ----------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void criterion_determinism() {
  const fs::path base = fs::temp_directory_path() / "lprl_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path config_path = base / "config.json";
  {
    nlohmann::json j = {{"schema_version", 1},
                        {"environment", "benchmark"},
                        {"benchmark", {{"function", "rastrigin_sr"}, {"nx", 2}}},
                        {"hyperparams",
                         {{"ncores", 8}, {"n_steps", 4}, {"total_samples", 3200}}},
                        {"seeds", {7}}};
    std::ofstream out(config_path);
    out << j.dump(2);
  }
  const std::string tool = LPRL_TOOL_PATH;
  auto run_once = [&](const std::string& out_dir) {
    const std::string cmd = "'" + tool + "' train --config '" +
                            config_path.string() + "' --seed 7 --out '" +
                            out_dir + "' > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int rc1 = run_once((base / "a").string());
  const int rc2 = run_once((base / "b").string());
  bool ok = rc1 == 0 && rc2 == 0;
  std::string mismatch = "none";
  for (const char* file :
       {"run_record.json", "generations.csv", "best_design.json", "config.json"}) {
    if (slurp(base / "a" / file) != slurp(base / "b" / file) ||
        slurp(base / "a" / file).empty()) {
      ok = false;
      mismatch = file;
    }
  }
  std::ostringstream os;
  os << "two cmd_train runs (seed 7): exit codes " << rc1 << "/" << rc2
     << ", byte mismatch in " << mismatch
     << " (manifest.json excluded by design)";
  report(10, "cmd_train is byte-reproducible", ok, os.str());
}

// --- criterion 11 ----------------------------------------------------------

void criterion_rl_vs_random() {
  const int n_seeds = 10;
  const long long budget = 10000;
  auto problem = std::make_shared<pwr::PwrProblem>(pwr::PwrProblem::defaults(0));
  std::vector<double> rl_best(n_seeds), random_best(n_seeds);

  parallel_for(2 * n_seeds, [&](int i) {
    const bool rl = i < n_seeds;
    const std::uint64_t seed = static_cast<std::uint64_t>(i % n_seeds) + 1;
    pwr::PwrEnvironment env(problem);
    if (rl) {
      HyperParams hp;  // Table-2 best chosen; 32 parallel agents
      hp.total_samples = budget;
      hp.seed = seed;
      RunRecord record;
      train(env, hp, record);
      rl_best[static_cast<std::size_t>(seed - 1)] = record.best_objective;
    } else {
      // Pure uniform-random action sampling at the same budget.
      Rng rng = Rng::seeded(Rng::mix(seed, 0xab5u));
      Rng dec = Rng::seeded(Rng::mix(seed, 0xab6u));
      const auto& spec = env.action_spec();
      double best = -std::numeric_limits<double>::infinity();
      std::vector<int> a(static_cast<std::size_t>(spec.dims()));
      for (long long t = 0; t < budget; ++t) {
        for (int d = 0; d < spec.dims(); ++d)
          a[static_cast<std::size_t>(d)] =
              static_cast<int>(rng.uniform_int(spec.cardinalities[d]));
        best = std::max(best, env.evaluate(a, dec).objective);
      }
      random_best[static_cast<std::size_t>(seed - 1)] = best;
    }
  });
  const double rl_median = median(rl_best);
  const double random_median = median(random_best);
  std::ostringstream os;
  os << "median best objective over 10 seeds: RL " << rl_median << ", random "
     << random_median;
  report(11, "RL beats uniform-random search on the synthetic core",
         rl_median > random_median, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  // Optional filter: run only the criteria whose ids are given.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto wanted = [&](int id) {
    return only.empty() || std::count(only.begin(), only.end(), id) > 0;
  };

  const auto t0 = std::chrono::steady_clock::now();
  if (wanted(4)) criterion_gradient_check();
  if (wanted(5)) criterion_gae_identity();
  if (wanted(6)) criterion_objective_feasibility();
  if (wanted(7)) criterion_lcoe_oracle();
  if (wanted(8)) criterion_decoder_totality();
  if (wanted(9)) criterion_statistics_oracle();
  if (wanted(10)) criterion_determinism();
  if (wanted(1)) criterion_global_optimum();
  if (wanted(2)) criterion_nf_ordering();
  if (wanted(3)) criterion_entropy_failure();
  if (wanted(11)) criterion_rl_vs_random();

  int failed = 0;
  for (const auto& r : g_results)
    if (!r.pass) ++failed;
  std::cout << g_results.size() - failed << "/" << g_results.size()
            << " criteria passed in " << seconds_since(t0) << " s\n";
  return failed == 0 ? 0 : 1;
}
