#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/newton.hpp"
#include "urysohn/problem.hpp"
#include "urysohn/quadrature.hpp"

namespace urysohn {

inline constexpr Eigen::Index kMaxNystromNodes = 5000;

template <typename Scalar>
using GridPtr = std::shared_ptr<const CompositeGrid<Scalar>>;

/// Values at every global node of a composite grid, in the grid's node order.
template <typename Scalar>
struct GridFunction {
  GridPtr<Scalar> grid;
  Vector<Scalar> values;

  Eigen::Index size() const { return values.size(); }
};

template <typename Scalar, typename Function>
GridFunction<Scalar> sample(const Function& x, GridPtr<Scalar> grid) {
  GridFunction<Scalar> out{grid, Vector<Scalar>(grid->size())};
  for (Eigen::Index a = 0; a < grid->size(); ++a) out.values(a) = x(grid->global_nodes(a));
  return out;
}

namespace detail {

template <typename Scalar>
void check_grid_function(const GridFunction<Scalar>& x) {
  if (!x.grid || x.values.size() != x.grid->size()) {
    throw ParameterError("grid function does not match its grid");
  }
}

template <typename Scalar>
void check_kernel_value(Scalar value, Scalar s, Scalar t) {
  if (!std::isfinite(static_cast<double>(value))) {
    throw EvaluationError("non-finite kernel value at node t = " + std::to_string(static_cast<double>(t)),
                          static_cast<double>(s));
  }
}

}  // namespace detail

/// K_m(x)(s) = (h/p) sum_j sum_q sum_nu w_q kappa(s, node, x(node)).
template <typename Scalar>
Scalar apply_km(const UrysohnProblem<Scalar>& problem, const GridFunction<Scalar>& x, Scalar s) {
  detail::check_grid_function(x);
  if (!(s >= 0 && s <= 1)) throw DomainError("apply_km: s outside [0,1]");
  const auto& grid = *x.grid;
  Scalar sum = 0;
  for (Eigen::Index b = 0; b < grid.size(); ++b) {
    const Scalar t = grid.global_nodes(b);
    const Scalar k = problem.kernel(s, t, x.values(b));
    detail::check_kernel_value(k, s, t);
    sum += grid.global_weights(b) * k;
  }
  return sum;
}

/// K_m'(base) v evaluated at s.
template <typename Scalar>
Scalar km_prime_apply(const UrysohnProblem<Scalar>& problem, const GridFunction<Scalar>& base,
                      const GridFunction<Scalar>& v, Scalar s) {
  detail::check_grid_function(base);
  detail::check_grid_function(v);
  if (base.grid->size() != v.grid->size()) throw ParameterError("km_prime_apply: grid mismatch");
  if (!(s >= 0 && s <= 1)) throw DomainError("km_prime_apply: s outside [0,1]");
  const auto& grid = *base.grid;
  Scalar sum = 0;
  for (Eigen::Index b = 0; b < grid.size(); ++b) {
    const Scalar t = grid.global_nodes(b);
    const Scalar k = problem.kernel_du(s, t, base.values(b));
    detail::check_kernel_value(k, s, t);
    sum += grid.global_weights(b) * k * v.values(b);
  }
  return sum;
}

/// K_m(x) at every node of x's own grid.
template <typename Scalar>
Vector<Scalar> apply_km_at_nodes(const UrysohnProblem<Scalar>& problem, const GridFunction<Scalar>& x) {
  const auto& grid = *x.grid;
  Vector<Scalar> out(grid.size());
  for (Eigen::Index a = 0; a < grid.size(); ++a) out(a) = apply_km(problem, x, grid.global_nodes(a));
  return out;
}

template <typename Scalar>
struct NystromSolution {
  UrysohnProblem<Scalar> problem;
  GridPtr<Scalar> grid;
  GridFunction<Scalar> node_values;
  int newton_iterations = 0;
  Scalar final_residual_norm = 0;
  std::vector<double> residual_trace;

  /// Natural extension x_m(s) = f(s) + K_m(x_m)(s).
  Scalar operator()(Scalar s) const { return problem.rhs(s) + apply_km(problem, node_values, s); }
};

/// Residual X - K_m(X)|nodes - f|nodes of the Nystrom system.
template <typename Scalar>
Vector<Scalar> nystrom_residual(const UrysohnProblem<Scalar>& problem, const GridFunction<Scalar>& x) {
  Vector<Scalar> r = x.values - apply_km_at_nodes(problem, x);
  for (Eigen::Index a = 0; a < r.size(); ++a) r(a) -= problem.rhs(x.grid->global_nodes(a));
  return r;
}

/// I - A with A_ab = (h/p) w_q(b) d kappa/du(node_a, node_b, X_b).
template <typename Scalar>
Matrix<Scalar> nystrom_jacobian(const UrysohnProblem<Scalar>& problem, const GridFunction<Scalar>& x) {
  const auto& grid = *x.grid;
  const Eigen::Index size = grid.size();
  Matrix<Scalar> jac = Matrix<Scalar>::Identity(size, size);
  for (Eigen::Index b = 0; b < size; ++b) {
    const Scalar t = grid.global_nodes(b);
    for (Eigen::Index a = 0; a < size; ++a) {
      const Scalar s = grid.global_nodes(a);
      const Scalar k = problem.kernel_du(s, t, x.values(b));
      detail::check_kernel_value(k, s, t);
      jac(a, b) -= grid.global_weights(b) * k;
    }
  }
  return jac;
}

/// Solves x_m - K_m(x_m) = f at the quadrature nodes by Newton's method. The initial iterate
/// defaults to f at the nodes.
template <typename Scalar>
NystromSolution<Scalar> solve_nystrom(const UrysohnProblem<Scalar>& problem, GridPtr<Scalar> grid,
                                      const NewtonOptions& newton = {},
                                      std::optional<Vector<Scalar>> initial = std::nullopt) {
  if (!grid) throw ParameterError("solve_nystrom: null grid");
  if (grid->size() > kMaxNystromNodes) {
    throw ConfigurationError("solve_nystrom: m * rho = " + std::to_string(grid->size()) +
                             " exceeds the dense-solve limit of " + std::to_string(kMaxNystromNodes));
  }
  Vector<Scalar> x0;
  if (initial) {
    if (initial->size() != grid->size()) throw ParameterError("solve_nystrom: initial iterate size mismatch");
    x0 = *initial;
  } else {
    x0 = sample<Scalar>(problem.rhs, grid).values;
  }

  auto as_grid_function = [&](const Vector<Scalar>& values) { return GridFunction<Scalar>{grid, values}; };
  const auto result = newton_solve<Scalar>(
      [&](const Vector<Scalar>& values) { return nystrom_residual(problem, as_grid_function(values)); },
      [&](const Vector<Scalar>& values) { return nystrom_jacobian(problem, as_grid_function(values)); },
      std::move(x0), newton);

  NystromSolution<Scalar> solution;
  solution.problem = problem;
  solution.grid = grid;
  solution.node_values = GridFunction<Scalar>{grid, result.x};
  solution.newton_iterations = result.iterations;
  solution.final_residual_norm = result.residual_norm;
  solution.residual_trace = result.residual_trace;
  return solution;
}

}  // namespace urysohn
