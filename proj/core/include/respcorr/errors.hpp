#pragma once

#include <stdexcept>
#include <string>

namespace respcorr {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (shape mismatches, bad files,
/// out-of-range requests). The CLI maps these to exit code 3.
struct DataError : Error {
  using Error::Error;
};

struct DimensionError : DataError {
  using DataError::DataError;
};

struct DegenerateInputError : DataError {
  using DataError::DataError;
};

struct IndexError : DataError {
  using DataError::DataError;
};

struct IoError : DataError {
  using DataError::DataError;
};

/// Numerical failure (NaN loss, divergence). The CLI maps these to exit code 4.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace respcorr
