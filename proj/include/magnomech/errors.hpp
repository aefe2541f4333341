#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magnomech {

/// A physical parameter is outside its allowed domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration file could not be read or does not match the schema.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of the numerical machinery (exit code 1 in the CLI).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : NumericalError(what), last_residual_(last_residual), iterations_(iterations) {}
  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class NearSingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// |T| too small for its phase to be differentiated.
class IllConditionedPhase : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Wraps a per-point failure during a grid evaluation.
class GridPointError : public NumericalError {
 public:
  GridPointError(std::size_t index, const std::string& cause)
      : NumericalError("grid point " + std::to_string(index) + ": " + cause), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace magnomech
