#pragma once

#include <string>

#include "lprl/pwr/pattern.hpp"
#include "lprl/pwr/surrogate.hpp"

namespace lprl::pwr {

/// File-exchange protocol to an external evaluator (a SIMULATE-class code or
/// any stand-in): a JSON request and response whose paths are passed as the
/// two arguments of the configured command. Exit code 0 means success; the
/// response must carry the full FOM set. Each worker owns one instance with
/// its own file pair, so invocations may run concurrently.
class ExternalEvaluator {
 public:
  ExternalEvaluator(std::string command, std::string workdir,
                    double timeout_seconds, std::string run_id, int instance);

  /// Throws EvaluatorError on timeout, nonzero exit, or malformed response.
  FomSet evaluate(const LoadingPattern& pattern, const CoreGeometry& geometry,
                  const BurnedInventory& inventory, const FreshCatalog& catalog,
                  long long sample_index);

  const std::string& command() const { return command_; }
  double timeout_seconds() const { return timeout_seconds_; }

 private:
  std::string command_;
  std::string workdir_;
  double timeout_seconds_;
  std::string run_id_;
  int instance_;
};

}  // namespace lprl::pwr
