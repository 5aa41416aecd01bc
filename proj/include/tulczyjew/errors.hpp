#pragma once

#include <stdexcept>
#include <string>

namespace tulczyjew {

/// Raised when an operation receives arguments outside its domain.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when two objects that must sit over the same base data do not.
struct ProjectionMismatch : ContractError {
  using ContractError::ContractError;
};

/// Raised when a covector element is not in the reducible (coisotropic) set.
struct NotReducible : ContractError {
  double residual = 0.0;
  NotReducible(const std::string& what, double r) : ContractError(what), residual(r) {}
};

/// Raised when the integrator produces a non-finite state.
struct NumericAbort : std::runtime_error {
  long step = 0;
  NumericAbort(const std::string& what, long s) : std::runtime_error(what), step(s) {}
};

// tolerance used for every base-point / projection precondition
inline constexpr double kMatchTol = 1e-9;

}  // namespace tulczyjew
