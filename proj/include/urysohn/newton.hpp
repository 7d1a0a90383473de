#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "urysohn/quadrature.hpp"

namespace urysohn {

struct NewtonOptions {
  double tol = 1e-12;  ///< sup-norm of the residual
  int max_iter = 50;
};

template <typename Scalar>
struct NewtonResult {
  Vector<Scalar> x;
  int iterations = 0;
  Scalar residual_norm = 0;
  std::vector<double> residual_trace;
};

/// Plain Newton iteration for F(x) = 0 with an analytic Jacobian. At least one correction
/// step is always taken; `iterations` counts the steps.
template <typename Scalar, typename ResidualFn, typename JacobianFn>
NewtonResult<Scalar> newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                                  Vector<Scalar> x, const NewtonOptions& options) {
  if (!(options.tol > 0) || options.max_iter < 1) {
    throw ParameterError("newton: tol must be positive and max_iter >= 1");
  }
  NewtonResult<Scalar> result;
  Vector<Scalar> r = residual(x);
  Scalar norm = r.template lpNorm<Eigen::Infinity>();
  result.residual_trace.push_back(static_cast<double>(norm));
  const Scalar singular_threshold = 100 * std::numeric_limits<Scalar>::epsilon();

  int steps = 0;
  while (!(steps >= 1 && norm <= Scalar(options.tol))) {
    if (steps == options.max_iter) {
      throw ConvergenceError("newton: no convergence after " + std::to_string(steps) +
                                 " iterations (residual " + std::to_string(static_cast<double>(norm)) + ")",
                             result.residual_trace);
    }
    const Matrix<Scalar> jac = jacobian(x);
    const Eigen::PartialPivLU<Matrix<Scalar>> lu(jac);
    if (lu.rcond() < singular_threshold) {
      throw SingularJacobianError("newton: Jacobian is numerically singular (rcond " +
                                  std::to_string(static_cast<double>(lu.rcond())) + ")");
    }
    const Vector<Scalar> step = lu.solve(r);
    if (!step.allFinite()) {
      throw ConvergenceError("newton: non-finite step at iteration " + std::to_string(steps + 1),
                             result.residual_trace);
    }
    x -= step;
    ++steps;
    r = residual(x);
    norm = r.template lpNorm<Eigen::Infinity>();
    result.residual_trace.push_back(static_cast<double>(norm));
    if (!std::isfinite(static_cast<double>(norm))) {
      throw ConvergenceError("newton: residual became non-finite", result.residual_trace);
    }
  }
  result.x = std::move(x);
  result.iterations = steps;
  result.residual_norm = norm;
  return result;
}

}  // namespace urysohn
