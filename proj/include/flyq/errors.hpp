#pragma once

#include <stdexcept>
#include <string>

namespace flyq {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// A truncated Fock space is too small for the requested state or dynamics.
/// `required()` is the smallest cutoff that would have worked, or 0 when the
/// caller cannot infer one.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required = 0)
      : Error(what), required_(required) {}
  int required() const noexcept { return required_; }

 private:
  int required_;
};

/// Adaptive integrator could not make progress.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// Generator kernel is not one-dimensional.
class SteadyStateError : public Error {
 public:
  using Error::Error;
};

class OptimizerError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario configuration. `field()` names the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace flyq
