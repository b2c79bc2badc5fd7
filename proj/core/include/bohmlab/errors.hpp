#pragma once

#include <stdexcept>
#include <string>

namespace bohmlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration (CLI exit code 1).
struct ConfigError : Error {
  using Error::Error;
};

/// Numerical failure: instability, degenerate state, domain escape,
/// flagged non-convergence (CLI exit code 2).
struct NumericalError : Error {
  using Error::Error;
};

/// Programming errors / impossible states (CLI exit code 3).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace bohmlab
