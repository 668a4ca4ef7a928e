#pragma once

#include <stdexcept>
#include <string>

namespace mplab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density has no mass on its grid (zero everywhere, or non-finite integral).
class ZeroMass : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A density is positive where its reference measure vanishes, or a log
/// was requested of a non-positive value.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// Grid bounds cut off more mass than the configured tolerance allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Too few points to fit a convergence trend.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mplab
