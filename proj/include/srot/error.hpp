#pragma once

#include <stdexcept>
#include <string>

namespace srot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, invalid histograms, bad options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A transport-plan constraint (column mass, nonnegativity) would be violated.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable numeric data.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (empty active set, pivot budget exhausted).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed external data (files, images).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace srot
