#pragma once

#include <stdexcept>
#include <string>

namespace roadprior {

// Base for everything thrown by this library. DataError covers malformed
// inputs and violated preconditions (CLI exit code 2); InternalError covers
// broken invariants that indicate a bug (exit code 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

struct DegenerateGeometry : DataError {
  using DataError::DataError;
};

struct DimensionMismatch : DataError {
  using DataError::DataError;
};

struct OutOfRange : DataError {
  using DataError::DataError;
};

struct StepOutOfRange : DataError {
  using DataError::DataError;
};

struct NPTooLarge : DataError {
  using DataError::DataError;
};

struct ClassMismatch : DataError {
  using DataError::DataError;
};

struct ParseError : DataError {
  using DataError::DataError;
};

struct SchemaVersionMismatch : DataError {
  using DataError::DataError;
};

struct ConfigInvalid : DataError {
  using DataError::DataError;
};

struct DenoiserFailure : DataError {
  using DataError::DataError;
};

}  // namespace roadprior
