#include "lprl/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lprl/bench/env.hpp"
#include "lprl/errors.hpp"
#include "lprl/pwr/env.hpp"

namespace lprl {

namespace fs = std::filesystem;

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return j;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).string();
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["environment"] = environment;
  if (environment == "pwr") {
    nlohmann::json p;
    if (pwr.geometry_file) p["geometry_file"] = *pwr.geometry_file;
    if (pwr.catalog_file) p["catalog_file"] = *pwr.catalog_file;
    if (pwr.inventory_file) p["inventory_file"] = *pwr.inventory_file;
    if (pwr.economics_file) p["economics_file"] = *pwr.economics_file;
    if (pwr.surrogate_file) p["surrogate_file"] = *pwr.surrogate_file;
    if (pwr.constraints_file) p["constraints_file"] = *pwr.constraints_file;
    p["inventory_seed"] = pwr.inventory_seed;
    if (pwr.weights) p["weights"] = *pwr.weights;
    if (pwr.evaluator_command) {
      p["evaluator_command"] = *pwr.evaluator_command;
      p["evaluator_timeout_seconds"] = pwr.evaluator_timeout_seconds;
    }
    j["pwr"] = std::move(p);
  } else {
    nlohmann::json b;
    b["function"] = benchmark.function;
    b["nx"] = benchmark.nx;
    b["instance_seed"] = benchmark.instance_seed;
    if (benchmark.shift_file) b["shift_file"] = *benchmark.shift_file;
    if (benchmark.rotation_file) b["rotation_file"] = *benchmark.rotation_file;
    j["benchmark"] = std::move(b);
  }
  nlohmann::json h;
  h["n_steps"] = hp.n_steps;
  h["ncores"] = hp.ncores;
  h["NF"] = hp.num_frames;
  h["ent_coef"] = hp.ent_coef;
  h["vf_coef"] = hp.vf_coef;
  h["noptepochs"] = hp.noptepochs;
  h["nminibatches"] = hp.nminibatches;
  h["clip_epsilon"] = hp.clip_epsilon;
  h["gamma"] = hp.gamma;
  h["lambda_gae"] = hp.lambda_gae;
  h["learning_rate"] = hp.learning_rate;
  h["max_grad_norm"] = hp.max_grad_norm;
  h["total_samples"] = hp.total_samples;
  h["hidden_width"] = hp.hidden_width;
  h["hidden_depth"] = hp.hidden_depth;
  h["normalize_advantage"] = hp.normalize_advantage;
  h["anneal_lr"] = hp.anneal_lr;
  h["rollout_threads"] = hp.rollout_threads;
  j["hyperparams"] = std::move(h);
  j["seeds"] = seeds;
  j["n_generations"] = n_generations;
  if (max_seconds > 0.0) j["max_seconds"] = max_seconds;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j,
                               const std::string& base_dir) {
  RunConfig c;
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ConfigError("config: unsupported schema_version");
    c.environment = j.at("environment").get<std::string>();
    if (c.environment != "pwr" && c.environment != "benchmark")
      throw ConfigError("config: environment must be 'pwr' or 'benchmark'");
    if (c.environment == "pwr") {
      const auto p = j.value("pwr", nlohmann::json::object());
      auto path = [&](const char* key) -> std::optional<std::string> {
        if (!p.contains(key)) return std::nullopt;
        return resolve(base_dir, p.at(key).get<std::string>());
      };
      c.pwr.geometry_file = path("geometry_file");
      c.pwr.catalog_file = path("catalog_file");
      c.pwr.inventory_file = path("inventory_file");
      c.pwr.economics_file = path("economics_file");
      c.pwr.surrogate_file = path("surrogate_file");
      c.pwr.constraints_file = path("constraints_file");
      c.pwr.inventory_seed = p.value("inventory_seed", 0ull);
      if (p.contains("weights")) c.pwr.weights = p.at("weights").get<double>();
      if (p.contains("evaluator_command")) {
        c.pwr.evaluator_command = p.at("evaluator_command").get<std::string>();
        c.pwr.evaluator_timeout_seconds =
            p.value("evaluator_timeout_seconds", 600.0);
      }
    } else {
      const auto b = j.value("benchmark", nlohmann::json::object());
      c.benchmark.function = b.value("function", std::string("sphere"));
      c.benchmark.nx = b.value("nx", 2);
      c.benchmark.instance_seed = b.value("instance_seed", 0ull);
      if (b.contains("shift_file"))
        c.benchmark.shift_file =
            resolve(base_dir, b.at("shift_file").get<std::string>());
      if (b.contains("rotation_file"))
        c.benchmark.rotation_file =
            resolve(base_dir, b.at("rotation_file").get<std::string>());
    }
    const auto h = j.value("hyperparams", nlohmann::json::object());
    c.hp.n_steps = h.value("n_steps", c.hp.n_steps);
    c.hp.ncores = h.value("ncores", c.hp.ncores);
    c.hp.num_frames = h.value("NF", c.hp.num_frames);
    c.hp.ent_coef = h.value("ent_coef", c.hp.ent_coef);
    c.hp.vf_coef = h.value("vf_coef", c.hp.vf_coef);
    c.hp.noptepochs = h.value("noptepochs", c.hp.noptepochs);
    c.hp.nminibatches = h.value("nminibatches", c.hp.nminibatches);
    c.hp.clip_epsilon = h.value("clip_epsilon", c.hp.clip_epsilon);
    c.hp.gamma = h.value("gamma", c.hp.gamma);
    c.hp.lambda_gae = h.value("lambda_gae", c.hp.lambda_gae);
    c.hp.learning_rate = h.value("learning_rate", c.hp.learning_rate);
    c.hp.max_grad_norm = h.value("max_grad_norm", c.hp.max_grad_norm);
    c.hp.total_samples = h.value("total_samples", c.hp.total_samples);
    c.hp.hidden_width = h.value("hidden_width", c.hp.hidden_width);
    c.hp.hidden_depth = h.value("hidden_depth", c.hp.hidden_depth);
    c.hp.normalize_advantage =
        h.value("normalize_advantage", c.hp.normalize_advantage);
    c.hp.anneal_lr = h.value("anneal_lr", c.hp.anneal_lr);
    c.hp.rollout_threads = h.value("rollout_threads", c.hp.rollout_threads);
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (c.seeds.empty()) throw ConfigError("config: seeds must not be empty");
    c.n_generations = j.value("n_generations", 100);
    c.max_seconds = j.value("max_seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  c.hp.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  const nlohmann::json j = read_json_file(path);
  return from_json(j, fs::path(path).parent_path().string());
}

std::unique_ptr<Environment> RunConfig::build_environment(
    const std::string& run_dir) const {
  if (environment == "benchmark") {
    bench::BenchmarkSpec spec = bench::make_benchmark(
        bench::function_from_name(benchmark.function), benchmark.nx,
        benchmark.instance_seed);
    if (benchmark.shift_file) bench::load_shift_file(spec, *benchmark.shift_file);
    if (benchmark.rotation_file)
      bench::load_rotation_file(spec, *benchmark.rotation_file);
    return std::make_unique<bench::BenchmarkEnvironment>(std::move(spec));
  }

  pwr::CoreGeometry geometry =
      pwr.geometry_file ? pwr::CoreGeometry::from_json(read_json_file(*pwr.geometry_file))
                        : pwr::CoreGeometry::default_w193();
  pwr::FreshCatalog catalog =
      pwr.catalog_file ? pwr::FreshCatalog::from_json(read_json_file(*pwr.catalog_file))
                       : pwr::FreshCatalog::default_catalog();
  pwr::BurnedInventory inventory =
      pwr.inventory_file
          ? pwr::BurnedInventory::from_json(read_json_file(*pwr.inventory_file))
          : pwr::BurnedInventory::synthesize(geometry, catalog, pwr.inventory_seed);
  pwr::SurrogateParams surrogate =
      pwr.surrogate_file
          ? pwr::SurrogateParams::from_json(read_json_file(*pwr.surrogate_file))
          : pwr::SurrogateParams{};
  pwr::EconomicParams economics =
      pwr.economics_file
          ? pwr::EconomicParams::from_json(read_json_file(*pwr.economics_file))
          : pwr::EconomicParams{};
  pwr::ConstraintSpec constraints =
      pwr.constraints_file
          ? pwr::ConstraintSpec::from_json(read_json_file(*pwr.constraints_file))
          : pwr::ConstraintSpec::defaults();
  if (pwr.weights) constraints.set_fom_weights(*pwr.weights);

  auto problem = std::make_shared<pwr::PwrProblem>(pwr::PwrProblem{
      std::move(geometry), std::move(catalog), std::move(inventory),
      std::move(surrogate), std::move(economics), std::move(constraints),
      pwr::EmbeddingRanges{}, std::nullopt});
  if (pwr.evaluator_command) {
    pwr::ExternalEvaluatorConfig ext;
    ext.command = *pwr.evaluator_command;
    ext.timeout_seconds = pwr.evaluator_timeout_seconds;
    ext.workdir = run_dir + "/evaluator";
    ext.run_id = fs::path(run_dir).filename().string();
    problem->external = std::move(ext);
  }
  return std::make_unique<pwr::PwrEnvironment>(std::move(problem));
}

void RunConfig::set_parameter(const std::string& name,
                              const std::string& value) {
  auto parse_double = [&](double& target) {
    if (!(std::istringstream(value) >> target))
      throw ConfigError("cannot parse value '" + value + "' for " + name);
  };
  auto parse_int = [&](int& target) {
    if (!(std::istringstream(value) >> target))
      throw ConfigError("cannot parse value '" + value + "' for " + name);
  };

  if (name == "ent_coef") parse_double(hp.ent_coef);
  else if (name == "vf_coef" || name == "VF_coef") parse_double(hp.vf_coef);
  else if (name == "n_steps") parse_int(hp.n_steps);
  else if (name == "NF" || name == "num_frames") parse_int(hp.num_frames);
  else if (name == "ncores") parse_int(hp.ncores);
  else if (name == "noptepochs") parse_int(hp.noptepochs);
  else if (name == "nminibatches") parse_int(hp.nminibatches);
  else if (name == "clip_epsilon" || name == "clip") parse_double(hp.clip_epsilon);
  else if (name == "gamma") parse_double(hp.gamma);
  else if (name == "lambda_gae" || name == "lambda") parse_double(hp.lambda_gae);
  else if (name == "learning_rate" || name == "LR") parse_double(hp.learning_rate);
  else if (name == "max_grad_norm") parse_double(hp.max_grad_norm);
  else if (name == "hidden_width") parse_int(hp.hidden_width);
  else if (name == "hidden_depth") parse_int(hp.hidden_depth);
  else if (name == "total_samples") {
    long long v = 0;
    if (!(std::istringstream(value) >> v))
      throw ConfigError("cannot parse value '" + value + "' for " + name);
    hp.total_samples = v;
  } else if (name == "weights") {
    if (environment != "pwr")
      throw ConfigError("'weights' applies to the pwr environment only");
    double w = 0.0;
    parse_double(w);
    pwr.weights = w;
  } else if (name == "nx") {
    if (environment != "benchmark")
      throw ConfigError("'nx' applies to the benchmark environment only");
    parse_int(benchmark.nx);
  } else if (name == "function") {
    if (environment != "benchmark")
      throw ConfigError("'function' applies to the benchmark environment only");
    bench::function_from_name(value);  // validates
    benchmark.function = value;
  } else {
    throw ConfigError("unknown sweep parameter: " + name);
  }
  hp.validate();
}

}  // namespace lprl
