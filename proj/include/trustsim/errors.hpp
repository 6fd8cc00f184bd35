#pragma once

#include <stdexcept>

namespace trustsim {

/// An argument fell outside the domain an operation is defined on.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Simulation parameters violate a model invariant.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Regression design matrix does not have full column rank.
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad command line: unknown flag, conflicting flags or out-of-range value.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trustsim
