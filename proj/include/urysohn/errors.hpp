#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace urysohn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied function returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double location)
      : Error(what + " (at " + std::to_string(location) + ")"), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// The discretisation parameters are inconsistent (e.g. quadrature precision too low).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Newton's method failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residual_trace)
      : Error(what), trace_(std::move(residual_trace)) {}

  /// Sup-norm residual at each Newton iteration.
  const std::vector<double>& residual_trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// The Newton Jacobian is numerically singular: 1 is (close to) an eigenvalue of the
/// linearised discrete operator.
class SingularJacobianError : public Error {
 public:
  using Error::Error;
};

/// Two sets of partition points do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class UnknownProblemError : public Error {
 public:
  using Error::Error;
};

}  // namespace urysohn
