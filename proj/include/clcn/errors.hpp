#pragma once

#include <stdexcept>
#include <string>

namespace clcn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape or dimension mismatch between tensors.
struct DimError : Error {
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

/// Malformed file contents (bad magic, truncated payload, bad CSV).
struct FormatError : Error {
  using Error::Error;
};

/// Bad run configuration (unknown keys, missing fields, invalid values).
struct ConfigError : Error {
  using Error::Error;
};

/// Non-finite or numerically degenerate values where finite ones are required.
struct NumericError : Error {
  using Error::Error;
};

/// Filesystem failures, reported with path context.
struct IoError : Error {
  using Error::Error;
};

}  // namespace clcn
