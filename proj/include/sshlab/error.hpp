#pragma once

#include <stdexcept>
#include <string>

namespace sshlab {

// Bad input: malformed config, invariant violations, out-of-range parameters.
// The CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not produce a result that meets its contract.
// The CLI maps these to exit code 2.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public ComputationError {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : ComputationError(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

// Eigenpairs too close to an exceptional point for a biorthogonal expansion.
class DefectiveSpectrumError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// The initial state never leaves its edge, so there is nothing to measure.
class NonTransportingError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace sshlab
