#pragma once

#include <string>
#include <vector>

#include "lprl/analytics.hpp"
#include "lprl/config.hpp"

namespace lprl {

/// Run-directory layout: config.json (the resolved snapshot), run_record.json,
/// generations.csv, best_design.json, and manifest.json (version + timestamp;
/// the only file that is not byte-reproducible).
struct RunPaths {
  std::string dir;
  std::string config() const { return dir + "/config.json"; }
  std::string record() const { return dir + "/run_record.json"; }
  std::string generations() const { return dir + "/generations.csv"; }
  std::string best_design() const { return dir + "/best_design.json"; }
  std::string manifest() const { return dir + "/manifest.json"; }
};

/// One training run persisted under out_dir. Throws on error after flushing
/// whatever partial record exists.
RunRecord run_train(const RunConfig& config, std::uint64_t seed,
                    const std::string& out_dir);

RunRecord load_run_record(const std::string& run_dir);

struct SweepCell {
  std::string param;
  std::string value;
  std::uint64_t seed = 0;
  std::string dir;
  bool completed = false;  // resumable: completed cells are skipped
};

std::vector<SweepCell> plan_sweep(const RunConfig& config,
                                  const std::string& param,
                                  const std::vector<std::string>& values,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::string& out_dir);

/// Executes the full Cartesian grid (values x seeds), skipping completed
/// cells, optionally across `jobs` forked worker processes, then writes
/// summary.json and stats_tests.json under out_dir.
void run_sweep(const RunConfig& config, const std::string& param,
               const std::vector<std::string>& values,
               const std::vector<std::uint64_t>& seeds,
               const std::string& out_dir, int jobs);

struct BenchPlan {
  std::string suite;
  std::vector<std::string> functions;
  std::string param;
  std::vector<std::string> values;
  int nx = 2;
  long long total_samples = 10000;
  int ncores = 8;
  int n_seeds = 20;
};

/// The benchmark reproduction grids: nf / nsteps at nx=2 with 10,000 samples,
/// entcoef at nx=10 with 20,000 samples, ncores 8, 20 seeds, all four
/// functions.
BenchPlan bench_plan(const std::string& suite);

void run_bench(const std::string& suite, const std::string& out_dir, int jobs,
               bool dry_run);

/// Metrics + Friedman/Nemenyi over treatment directories (each containing
/// seed_*/ run dirs). Incompatible generation counts are renormalized to the
/// smallest with a warning. Writes summary.json and stats_tests.json.
void run_stats(const std::vector<std::string>& treatment_dirs,
               const std::string& out_dir, int n_generations);

/// Writes the default geometry/catalog/inventory/economics/surrogate/
/// constraints data files plus a starter run config into out_dir.
void write_default_data(const std::string& out_dir, std::uint64_t inventory_seed);

}  // namespace lprl
