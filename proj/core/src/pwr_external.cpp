#include "lprl/pwr/external.hpp"

#include <filesystem>
#include <fstream>

#include "lprl/errors.hpp"
#include "lprl/subprocess.hpp"

namespace lprl::pwr {

ExternalEvaluator::ExternalEvaluator(std::string command, std::string workdir,
                                     double timeout_seconds, std::string run_id,
                                     int instance)
    : command_(std::move(command)),
      workdir_(std::move(workdir)),
      timeout_seconds_(timeout_seconds),
      run_id_(std::move(run_id)),
      instance_(instance) {
  std::filesystem::create_directories(workdir_);
}

FomSet ExternalEvaluator::evaluate(const LoadingPattern& pattern,
                                   const CoreGeometry& geometry,
                                   const BurnedInventory& inventory,
                                   const FreshCatalog& catalog,
                                   long long sample_index) {
  const std::string stem =
      workdir_ + "/eval_" + std::to_string(instance_);
  const std::string req_path = stem + "_request.json";
  const std::string resp_path = stem + "_response.json";
  const std::string log_path = stem + ".log";

  nlohmann::json request;
  request["pattern"] = pattern_to_json(pattern, geometry, inventory, catalog);
  request["meta"] = {{"run_id", run_id_}, {"sample_index", sample_index}};
  {
    std::ofstream out(req_path);
    if (!out) throw EvaluatorError(EvaluatorError::Kind::Spawn,
                                   "cannot write request file " + req_path);
    out << request.dump(2) << "\n";
  }
  std::error_code ec;
  std::filesystem::remove(resp_path, ec);

  const SubprocessResult run =
      run_command(command_, {req_path, resp_path}, timeout_seconds_, log_path);
  if (run.spawn_failed)
    throw EvaluatorError(EvaluatorError::Kind::Spawn,
                         "failed to spawn evaluator: " + command_);
  if (run.timed_out)
    throw EvaluatorError(EvaluatorError::Kind::Timeout,
                         "evaluator exceeded " +
                             std::to_string(timeout_seconds_) + " s; log: " +
                             run.log_tail);
  if (run.exit_code != 0)
    throw EvaluatorError(EvaluatorError::Kind::ExitStatus,
                         "evaluator exited with status " +
                             std::to_string(run.exit_code) + "; log: " +
                             run.log_tail);

  std::ifstream in(resp_path);
  if (!in)
    throw EvaluatorError(EvaluatorError::Kind::Malformed,
                         "evaluator produced no response file");
  nlohmann::json resp;
  try {
    in >> resp;
  } catch (const nlohmann::json::exception& e) {
    throw EvaluatorError(EvaluatorError::Kind::Malformed,
                         std::string("unparseable response: ") + e.what());
  }

  try {
    FomSet foms;
    foms.cycle_length_efpd = resp.at("cycle_length_efpd").get<double>();
    foms.fq = resp.at("fq").get<double>();
    foms.fdh = resp.at("fdh").get<double>();
    foms.cb_ppm = resp.at("cb_ppm").get<double>();
    foms.pin_peak_bu = resp.at("pin_peak_bu_gwd_thm").get<double>();
    const int n = geometry.num_locations() + 1;  // decision locations + center
    foms.rpf.assign(static_cast<std::size_t>(n), -1.0);
    foms.fdh_assembly.assign(static_cast<std::size_t>(n), -1.0);
    foms.eoc_exposure.assign(static_cast<std::size_t>(n), -1.0);
    for (const auto& a : resp.at("assemblies")) {
      const int loc = a.at("location").get<int>();
      if (loc < 0 || loc >= n)
        throw EvaluatorError(EvaluatorError::Kind::Malformed,
                             "response assembly location out of range");
      foms.rpf[static_cast<std::size_t>(loc)] = a.at("rpf").get<double>();
      foms.fdh_assembly[static_cast<std::size_t>(loc)] =
          a.at("fdh").get<double>();
      foms.eoc_exposure[static_cast<std::size_t>(loc)] =
          a.at("eoc_exposure").get<double>();
    }
    for (int i = 0; i < n; ++i)
      if (foms.rpf[static_cast<std::size_t>(i)] < 0.0)
        throw EvaluatorError(EvaluatorError::Kind::Malformed,
                             "response missing assembly entry for location " +
                                 std::to_string(i));
    return foms;
  } catch (const nlohmann::json::exception& e) {
    throw EvaluatorError(EvaluatorError::Kind::Malformed,
                         std::string("response missing field: ") + e.what());
  }
}

}  // namespace lprl::pwr
