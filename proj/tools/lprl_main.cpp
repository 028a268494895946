#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <stdexcept>

#include "lprl/errors.hpp"
#include "lprl/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEvaluator = 3;
constexpr int kExitNumeric = 4;

int guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const lprl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lprl::EvaluatorError& e) {
    std::cerr << "evaluator error: " << e.what() << "\n";
    return kExitEvaluator;
  } catch (const lprl::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  // Either a count ("10" -> seeds 1..10) is ambiguous with a single seed, so
  // the flag takes an explicit comma-separated list; "1..20" expands a range.
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string tok = spec.substr(pos, comma - pos);
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(tok.substr(0, dots));
      const std::uint64_t hi = std::stoull(tok.substr(dots + 2));
      if (hi < lo) throw lprl::ConfigError("bad seed range: " + tok);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!tok.empty()) {
      seeds.push_back(std::stoull(tok));
    }
    pos = comma + 1;
  }
  if (seeds.empty()) throw lprl::ConfigError("empty seed list");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPO-driven combinatorial design optimization: PWR loading "
               "patterns and integer-grid benchmarks"};
  app.require_subcommand(1);

  // train
  std::string train_config, train_out = "runs/train";
  std::uint64_t train_seed = 1;
  auto* train = app.add_subcommand("train", "run one training");
  train->add_option("--config", train_config, "run config JSON")->required();
  train->add_option("--seed", train_seed, "RNG seed");
  train->add_option("--out", train_out, "output run directory");

  // sweep
  std::string sweep_config, sweep_param, sweep_values, sweep_seeds = "1..10";
  std::string sweep_out = "runs/sweep";
  int sweep_jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "hyper-parameter grid over seeds");
  sweep->add_option("--config", sweep_config, "run config JSON")->required();
  sweep->add_option("--param", sweep_param, "parameter name")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--seeds", sweep_seeds, "seed list, e.g. 1,2,3 or 1..10");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--jobs", sweep_jobs, "parallel worker processes");

  // bench
  std::string bench_suite, bench_out = "runs/bench";
  int bench_jobs = 1;
  bool bench_dry = false;
  auto* bench = app.add_subcommand("bench", "benchmark reproduction suites");
  bench->add_option("--suite", bench_suite, "nf | nsteps | entcoef")->required();
  bench->add_option("--out", bench_out, "output directory");
  bench->add_option("--jobs", bench_jobs, "parallel worker processes");
  bench->add_flag("--dry-run", bench_dry, "print the run matrix and exit");

  // stats
  std::vector<std::string> stats_runs;
  std::string stats_out = "runs/stats";
  int stats_gens = 100;
  auto* stats = app.add_subcommand("stats", "metrics + statistical tests");
  stats->add_option("--runs", stats_runs, "treatment directories")->required();
  stats->add_option("--out", stats_out, "output directory");
  stats->add_option("--generations", stats_gens, "generation count");

  // init-data
  std::string data_out = "data";
  std::uint64_t data_seed = 0;
  auto* init = app.add_subcommand("init-data", "write default data files");
  init->add_option("--out", data_out, "output directory");
  init->add_option("--inventory-seed", data_seed, "inventory synthesis seed");

  CLI11_PARSE(app, argc, argv);

  if (*train)
    return guarded([&] {
      const lprl::RunConfig config = lprl::RunConfig::load(train_config);
      lprl::run_train(config, train_seed, train_out);
    });
  if (*sweep)
    return guarded([&] {
      const lprl::RunConfig config = lprl::RunConfig::load(sweep_config);
      std::vector<std::string> values;
      std::size_t pos = 0;
      while (pos <= sweep_values.size()) {
        std::size_t comma = sweep_values.find(',', pos);
        if (comma == std::string::npos) comma = sweep_values.size();
        if (comma > pos) values.push_back(sweep_values.substr(pos, comma - pos));
        pos = comma + 1;
      }
      if (values.empty()) throw lprl::ConfigError("empty --values list");
      lprl::run_sweep(config, sweep_param, values, parse_seeds(sweep_seeds),
                      sweep_out, sweep_jobs);
    });
  if (*bench)
    return guarded(
        [&] { lprl::run_bench(bench_suite, bench_out, bench_jobs, bench_dry); });
  if (*stats)
    return guarded([&] { lprl::run_stats(stats_runs, stats_out, stats_gens); });
  if (*init)
    return guarded([&] { lprl::write_default_data(data_out, data_seed); });
  return kExitOk;
}
