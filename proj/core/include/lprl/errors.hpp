#pragma once

#include <stdexcept>
#include <string>

namespace lprl {

/// Bad or missing configuration (files, schema, parameter ranges). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// External evaluator failure (timeout, malformed response, nonzero exit). CLI exit code 3.
class EvaluatorError : public std::runtime_error {
 public:
  enum class Kind { Timeout, Malformed, ExitStatus, Spawn };

  EvaluatorError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Non-finite values in the numeric core (losses, network outputs). CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller broke a documented precondition; always a bug on the calling side.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lprl
