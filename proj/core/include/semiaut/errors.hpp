#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semiaut {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (bad argument combination, wrong connectivity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its admissible set, e.g. |a| >= 1 for a ball automorphism.
class ParameterDomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Two grids that do not share bounding box and sample counts.
class GridIncompatible : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidCurve : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidDomain : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Evaluation point outside the domain of one step of a map chain.
class OutOfDomain : public PreconditionError {
 public:
  OutOfDomain(const std::string& what, std::size_t step)
      : PreconditionError(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Circles closer than the resolvable gap.
class DegenerateConfiguration : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Something numeric went wrong: failed solve, non-convergence, loss of positivity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public NumericalError {
 public:
  SolverFailure(const std::string& what, double residual)
      : NumericalError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NumericalDegeneracy : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A mathematical statement the code asserts turned out false on the data.
class ClaimViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace semiaut
