#pragma once

#include <stdexcept>
#include <string>

namespace cahnlab {

/// Violated operation precondition (bad argument, mismatched grids, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside a function's domain (logarithmic potential off (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or invalid configuration. `key()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Time integration failure: blow-up or loss of energy decay.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, long step, double time)
      : std::runtime_error(what + " (step " + std::to_string(step) + ", t = " + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}
  long step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  long step_;
  double time_;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cahnlab
