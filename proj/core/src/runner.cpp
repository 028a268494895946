#include "lprl/runner.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lprl/errors.hpp"
#include "lprl/pwr/env.hpp"

namespace lprl {

namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

RunRecord run_train(const RunConfig& config, std::uint64_t seed,
                    const std::string& out_dir) {
  RunPaths paths{out_dir};
  fs::create_directories(out_dir);

  RunConfig effective = config;
  effective.seeds = {seed};
  effective.hp.seed = seed;
  const nlohmann::json snapshot = effective.to_json();

  // Validation before compute: environment construction parses every file.
  auto prototype = effective.build_environment(out_dir);
  write_json_file(paths.config(), snapshot);

  RunRecord record;
  record.config_snapshot = snapshot;
  try {
    train(*prototype, effective.hp, record);
  } catch (...) {
    write_json_file(paths.record(), record.to_json());  // partial flush
    throw;
  }

  write_json_file(paths.record(), record.to_json());
  if (static_cast<int>(record.episodes.size()) >= effective.n_generations) {
    analytics::write_generation_csv(
        paths.generations(),
        analytics::bin_generations(record, effective.n_generations));
  }
  write_json_file(paths.best_design(),
                  {{"objective", record.best_objective},
                   {"samples_at_best", record.samples_at_best},
                   {"design", record.best_payload}});
  write_json_file(paths.manifest(), {{"tool", "lprl"},
                                     {"version", LPRL_VERSION_STRING},
                                     {"created_utc", timestamp_utc()},
                                     {"seed", seed}});
  return record;
}

RunRecord load_run_record(const std::string& run_dir) {
  const std::string path = RunPaths{run_dir}.record();
  std::ifstream in(path);
  if (!in) throw ConfigError("no run record at " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return RunRecord::from_json(j);
}

std::vector<SweepCell> plan_sweep(const RunConfig& config,
                                  const std::string& param,
                                  const std::vector<std::string>& values,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::string& out_dir) {
  {
    RunConfig probe = config;  // reject unknown parameters up front
    probe.set_parameter(param, values.at(0));
  }
  std::vector<SweepCell> cells;
  for (const auto& v : values)
    for (std::uint64_t s : seeds) {
      SweepCell cell;
      cell.param = param;
      cell.value = v;
      cell.seed = s;
      cell.dir = out_dir + "/" + param + "=" + v + "/seed_" + std::to_string(s);
      cell.completed = fs::exists(RunPaths{cell.dir}.record());
      cells.push_back(std::move(cell));
    }
  return cells;
}

namespace {

void execute_cells(const RunConfig& config,
                   const std::vector<SweepCell>& cells, int jobs) {
  auto run_cell = [&](const SweepCell& cell) {
    if (cell.completed) return;
    RunConfig cell_config = config;
    cell_config.set_parameter(cell.param, cell.value);
    run_train(cell_config, cell.seed, cell.dir);
  };

  if (jobs <= 1) {
    bool any_failed = false;
    for (const auto& cell : cells) {
      try {
        run_cell(cell);
      } catch (const std::exception& e) {
        std::cerr << "cell " << cell.dir << " failed: " << e.what() << "\n";
        any_failed = true;  // sweep isolation: siblings keep running
      }
    }
    if (any_failed)
      std::cerr << "warning: some sweep cells failed; completed cells are kept\n";
    return;
  }
  // Fork one worker per job slot; cell k goes to worker k mod jobs. Each cell
  // writes only its own directory, so workers never conflict.
  std::vector<pid_t> children;
  for (int w = 0; w < jobs; ++w) {
    const pid_t pid = fork();
    if (pid < 0) throw ConfigError("fork failed");
    if (pid == 0) {
      int status = 0;
      for (std::size_t k = static_cast<std::size_t>(w); k < cells.size();
           k += static_cast<std::size_t>(jobs)) {
        try {
          run_cell(cells[k]);
        } catch (const std::exception& e) {
          std::cerr << "cell " << cells[k].dir << " failed: " << e.what()
                    << "\n";
          status = 1;  // sweep isolation: siblings keep running
        }
      }
      _exit(status);
    }
    children.push_back(pid);
  }
  bool any_failed = false;
  for (pid_t pid : children) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) any_failed = true;
  }
  if (any_failed)
    std::cerr << "warning: some sweep cells failed; completed cells are kept\n";
}

int effective_generations(const std::vector<std::vector<RunRecord>>& groups,
                          int requested) {
  int n_gen = requested;
  for (const auto& g : groups)
    for (const auto& r : g)
      n_gen = std::min(n_gen, static_cast<int>(r.episodes.size()));
  return std::max(n_gen, 1);
}

nlohmann::json stats_tests_json(const analytics::ExperimentSet& set) {
  nlohmann::json out;
  for (const auto& [measure, matrix] :
       {std::pair{std::string("max_objective"), set.max_objective_matrix()},
        std::pair{std::string("mean_objective"), set.mean_objective_matrix()}}) {
    nlohmann::json m;
    m["treatments"] = set.treatments;
    if (matrix.cols >= 3 && matrix.rows >= 2) {
      const auto fr = stats::friedman(matrix);
      m["friedman"] = {{"statistic", fr.statistic},
                       {"p_value", fr.p_value},
                       {"degenerate", fr.degenerate}};
      const auto nm = stats::nemenyi(matrix);
      auto rows = nlohmann::json::array();
      for (int r = 0; r < nm.rows; ++r) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < nm.cols; ++c) row.push_back(nm.at(r, c));
        rows.push_back(std::move(row));
      }
      m["nemenyi"] = std::move(rows);
    } else {
      m["skipped"] = "tests need >= 3 treatments and >= 2 seeds";
    }
    out[measure] = std::move(m);
  }
  return out;
}

void write_experiment_reports(const analytics::ExperimentSet& set,
                              const std::string& out_dir, int n_generations) {
  fs::create_directories(out_dir);
  const int n_gen = effective_generations(set.runs, n_generations);
  if (n_gen < n_generations)
    std::cerr << "warning: generations renormalized to " << n_gen
              << " (smallest run)\n";
  auto summary = nlohmann::json::array();
  for (std::size_t t = 0; t < set.treatments.size(); ++t)
    summary.push_back(analytics::summarize_treatment(set.treatments[t],
                                                     set.runs[t], n_gen)
                          .to_json());
  write_json_file(out_dir + "/summary.json",
                  {{"n_generations", n_gen}, {"treatments", summary}});
  write_json_file(out_dir + "/stats_tests.json", stats_tests_json(set));
}

}  // namespace

void run_sweep(const RunConfig& config, const std::string& param,
               const std::vector<std::string>& values,
               const std::vector<std::uint64_t>& seeds,
               const std::string& out_dir, int jobs) {
  const auto cells = plan_sweep(config, param, values, seeds, out_dir);
  execute_cells(config, cells, jobs);

  analytics::ExperimentSet set;
  for (const auto& v : values) {
    std::vector<RunRecord> runs;
    for (std::uint64_t s : seeds) {
      const std::string dir =
          out_dir + "/" + param + "=" + v + "/seed_" + std::to_string(s);
      try {
        runs.push_back(load_run_record(dir));
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping " << dir << ": " << e.what() << "\n";
      }
    }
    if (!runs.empty()) {
      set.treatments.push_back(param + "=" + v);
      set.runs.push_back(std::move(runs));
    }
  }
  if (set.runs.empty()) throw ConfigError("sweep produced no readable runs");
  const std::size_t n0 = set.runs.front().size();
  const bool complete = std::all_of(
      set.runs.begin(), set.runs.end(),
      [&](const std::vector<RunRecord>& g) { return g.size() == n0; });
  const int n_gen = effective_generations(set.runs, config.n_generations);
  auto summary = nlohmann::json::array();
  for (std::size_t t = 0; t < set.treatments.size(); ++t)
    summary.push_back(analytics::summarize_treatment(set.treatments[t],
                                                     set.runs[t], n_gen)
                          .to_json());
  write_json_file(out_dir + "/summary.json",
                  {{"n_generations", n_gen}, {"treatments", summary}});
  if (complete)
    write_json_file(out_dir + "/stats_tests.json", stats_tests_json(set));
  else
    std::cerr << "warning: incomplete seed matrix; statistical tests skipped\n";
}

BenchPlan bench_plan(const std::string& suite) {
  BenchPlan plan;
  plan.suite = suite;
  plan.functions = {"sphere", "rosenbrock_sr", "rastrigin_sr", "schaffer_f6_sr"};
  if (suite == "nf") {
    plan.param = "NF";
    plan.values = {"1", "2", "7", "10", "25", "75", "100"};
    plan.nx = 2;
    plan.total_samples = 10000;
  } else if (suite == "nsteps") {
    plan.param = "n_steps";
    plan.values = {"1", "2", "4", "6", "8", "10", "25", "35", "75"};
    plan.nx = 2;
    plan.total_samples = 10000;
  } else if (suite == "entcoef") {
    plan.param = "ent_coef";
    plan.values = {"0", "0.00001", "0.0001", "0.001", "0.01", "0.1"};
    plan.nx = 10;
    plan.total_samples = 20000;
  } else {
    throw ConfigError("unknown bench suite: " + suite +
                      " (expected nf, nsteps, or entcoef)");
  }
  return plan;
}

void run_bench(const std::string& suite, const std::string& out_dir, int jobs,
               bool dry_run) {
  const BenchPlan plan = bench_plan(suite);
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= plan.n_seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));

  if (dry_run) {
    std::cout << "suite " << plan.suite << ": " << plan.functions.size()
              << " functions x " << plan.values.size() << " values of "
              << plan.param << " x " << plan.n_seeds << " seeds @ "
              << plan.total_samples << " samples (nx=" << plan.nx
              << ", ncores=" << plan.ncores << ")\n";
    for (const auto& fn : plan.functions)
      for (const auto& v : plan.values)
        std::cout << "  " << out_dir << "/" << fn << "/" << plan.param << "="
                  << v << "/seed_{1.." << plan.n_seeds << "}\n";
    return;
  }

  for (const auto& fn : plan.functions) {
    RunConfig config;
    config.environment = "benchmark";
    config.benchmark.function = fn;
    config.benchmark.nx = plan.nx;
    config.hp.ncores = plan.ncores;
    config.hp.n_steps = 4;
    config.hp.num_frames = 1;
    config.hp.ent_coef = 0.001;
    config.hp.total_samples = plan.total_samples;
    config.seeds = seeds;
    run_sweep(config, plan.param, plan.values, seeds, out_dir + "/" + fn, jobs);
  }
}

void run_stats(const std::vector<std::string>& treatment_dirs,
               const std::string& out_dir, int n_generations) {
  analytics::ExperimentSet set;
  for (const auto& dir : treatment_dirs) {
    std::vector<std::pair<std::string, RunRecord>> named;
    if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_directory()) continue;
      const std::string record = RunPaths{entry.path().string()}.record();
      if (!fs::exists(record)) continue;
      try {
        named.emplace_back(entry.path().filename().string(),
                           load_run_record(entry.path().string()));
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping " << entry.path() << ": " << e.what()
                  << "\n";
      }
    }
    if (named.empty()) throw ConfigError("no run records under " + dir);
    std::sort(named.begin(), named.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<RunRecord> runs;
    for (auto& [_, r] : named) runs.push_back(std::move(r));
    set.treatments.push_back(fs::path(dir).filename().string());
    set.runs.push_back(std::move(runs));
  }
  const std::size_t n0 = set.runs.front().size();
  for (const auto& g : set.runs)
    if (g.size() != n0)
      throw ConfigError("treatments have different seed counts; "
                        "statistical tests need a complete matrix");
  write_experiment_reports(set, out_dir, n_generations);
}

void write_default_data(const std::string& out_dir,
                        std::uint64_t inventory_seed) {
  fs::create_directories(out_dir);
  const pwr::PwrProblem problem = pwr::PwrProblem::defaults(inventory_seed);
  write_json_file(out_dir + "/geometry_w193.json", problem.geometry.to_json());
  write_json_file(out_dir + "/fresh_catalog.json", problem.catalog.to_json());
  write_json_file(out_dir + "/inventory_equilibrium.json",
                  problem.inventory.to_json());
  write_json_file(out_dir + "/economics.json", problem.economics.to_json());
  write_json_file(out_dir + "/surrogate.json", problem.surrogate.to_json());
  write_json_file(out_dir + "/constraints.json", problem.constraints.to_json());

  RunConfig config;
  config.environment = "pwr";
  config.pwr.geometry_file = "geometry_w193.json";
  config.pwr.catalog_file = "fresh_catalog.json";
  config.pwr.inventory_file = "inventory_equilibrium.json";
  config.pwr.economics_file = "economics.json";
  config.pwr.surrogate_file = "surrogate.json";
  config.pwr.constraints_file = "constraints.json";
  write_json_file(out_dir + "/pwr_default.json", config.to_json());
}

}  // namespace lprl
