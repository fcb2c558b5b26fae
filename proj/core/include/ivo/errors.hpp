#pragma once

#include <stdexcept>
#include <string>

namespace ivo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two observations of the same obstacle are closer in time than the estimator allows.
class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

/// Relative velocity too small for the collision cone to be defined.
class DegenerateVelocity : public Error {
 public:
  using Error::Error;
};

/// A scenario or configuration violates one of its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Too many Monte-Carlo draws had to be discarded as degenerate.
class ExcessiveDiscards : public Error {
 public:
  using Error::Error;
};

}  // namespace ivo
