#pragma once

#include <stdexcept>
#include <string>

namespace lansa {

/// Inconsistent grids, malformed inputs, bad configuration values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operator was violated (e.g. a field that must be
/// solenoidal is not).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite or runaway state encountered while time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, int step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace lansa
