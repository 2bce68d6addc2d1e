#pragma once

#include <stdexcept>
#include <string>

namespace nrpunct {

/// Invalid user-supplied configuration (bad value, unsupported option, parse failure).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A function was called outside its documented preconditions.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A model invariant failed while simulating. Carries the invariant's name so
/// the sweep can report which check tripped.
class InvariantViolation : public std::runtime_error {
public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

private:
  std::string invariant_;
};

}  // namespace nrpunct
