#pragma once

#include <stdexcept>
#include <string>

namespace sentivec {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 1,
// DataError -> 2, everything else -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration (files, keys, flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unloadable or malformed input data (missing files, bad lines).
class DataError : public Error {
 public:
  using Error::Error;
};

// A caller violated a function precondition (bad counts, dimension mismatch).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A computation could not produce a result (divergence, empty vocabulary,
// undefined metric).
class ComputeError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentivec
