#pragma once

#include <stdexcept>
#include <string>

namespace adhesion {

/// Base class for every error raised by the library.
class AdhesionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A modelling hypothesis on the input data does not hold.
class HypothesisViolation : public AdhesionError {
public:
  HypothesisViolation(std::string name, std::string location)
      : AdhesionError("hypothesis violated: " + name + " (" + location + ")"),
        name_(std::move(name)),
        location_(std::move(location)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& location() const noexcept { return location_; }

private:
  std::string name_;
  std::string location_;
};

class ConfigError : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class DegenerateOperator : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class DegenerateFriction : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class NonfiniteValue : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class HistoryMissing : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class NegativeDensity : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class MassAtLeastOne : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class NonpositiveGamma1 : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

class GridMismatch : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

/// A hard runtime invariant (positivity, saturation, energy decay) failed.
class InvariantViolation : public AdhesionError {
public:
  using AdhesionError::AdhesionError;
};

}  // namespace adhesion
