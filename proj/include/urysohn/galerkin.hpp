#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "urysohn/newton.hpp"
#include "urysohn/nystrom.hpp"
#include "urysohn/point_values.hpp"
#include "urysohn/problem.hpp"
#include "urysohn/projection.hpp"

namespace urysohn {

inline constexpr int kMaxGalerkinUnknowns = 2000;

/// Smallest Gauss point count with degree of precision >= 3r.
inline int minimal_gauss_count(int r) { return (3 * r + 2) / 2; }

/// p = n^r, so the fine mesh satisfies h~ = h^{r+1}.
inline int power_refinement(int n, int r) {
  long long p = 1;
  for (int i = 0; i < r; ++i) {
    p *= n;
    if (p * n > std::numeric_limits<int>::max()) throw ParameterError("power_refinement: n^r overflows");
  }
  return static_cast<int>(p);
}

template <typename Scalar>
struct GalerkinSolution {
  UrysohnProblem<Scalar> problem;
  GridPtr<Scalar> grid;
  int r = 0;
  PiecewiseLegendre<Scalar> z_g;
  GridFunction<Scalar> z_g_node_values;
  int newton_iterations = 0;
  Scalar final_residual_norm = 0;
  std::vector<double> residual_trace;
};

/// z^S(s) = K_m(z^G)(s) + f(s).
template <typename Scalar>
Scalar iterated_eval(const GalerkinSolution<Scalar>& solution, Scalar s) {
  return apply_km(solution.problem, solution.z_g_node_values, s) + solution.problem.rhs(s);
}

/// Callable view of the iterated solution.
template <typename Scalar>
struct IteratedSolution {
  const GalerkinSolution<Scalar>& galerkin;
  Scalar operator()(Scalar s) const { return iterated_eval(galerkin, s); }
};

/// Discrete Galerkin system in coefficient space. Unknowns are c_{j,eta} flattened as
/// j * r + eta; residual F(c) = c - P_n K_m(z_c) - P_n f.
template <typename Scalar>
class GalerkinSystem {
 public:
  GalerkinSystem(const UrysohnProblem<Scalar>& problem, GridPtr<Scalar> grid, int r)
      : problem_(problem), grid_(std::move(grid)), r_(r) {
    require_projection_precision(*grid_, r_);
    using std::sqrt;
    basis_ = local_basis(*grid_, r_);
    weighted_basis_ = grid_->composite_weights.asDiagonal() * basis_;
    sqrt_h_ = sqrt(grid_->h());
    rhs_coefficients_ = flatten(project(problem_.rhs, *grid_, r_));
  }

  Eigen::Index size() const { return Eigen::Index(grid_->n) * r_; }

  PiecewiseLegendre<Scalar> unflatten(const Vector<Scalar>& c) const {
    PiecewiseLegendre<Scalar> pl;
    pl.r = r_;
    pl.n = grid_->n;
    pl.coefficients = Eigen::Map<const Matrix<Scalar>>(c.data(), r_, grid_->n).transpose();
    return pl;
  }

  static Vector<Scalar> flatten(const PiecewiseLegendre<Scalar>& pl) {
    const Matrix<Scalar> transposed = pl.coefficients.transpose();
    return Eigen::Map<const Vector<Scalar>>(transposed.data(), transposed.size());
  }

  GridFunction<Scalar> node_values(const Vector<Scalar>& c) const {
    return GridFunction<Scalar>{grid_, evaluate_at_nodes(unflatten(c), *grid_)};
  }

  const Vector<Scalar>& rhs_coefficients() const { return rhs_coefficients_; }

  Vector<Scalar> residual(const Vector<Scalar>& c) const {
    const auto z = node_values(c);
    const Vector<Scalar> km = apply_km_at_nodes(problem_, z);
    return c - flatten(project_values<Scalar>(km, *grid_, r_)) - rhs_coefficients_;
  }

  /// delta - <K_m'(z_c) phi_{k,xi}, phi_{j,eta}>_{Delta_j,m}. Built from an (m rho) x (n r)
  /// intermediate, never the full node-to-node matrix.
  Matrix<Scalar> jacobian(const Vector<Scalar>& c) const {
    const auto z = node_values(c);
    const auto& grid = *grid_;
    const Eigen::Index nodes = grid.size();
    const int local = grid.local_count();
    const Eigen::Index unknowns = size();

    // partial(a, k r + xi) = sum_{b in Delta_k} W_b dkappa/du(a, b, z_b) phi_{k,xi}(b)
    Matrix<Scalar> partial(nodes, unknowns);
    Vector<Scalar> row(nodes);
    for (Eigen::Index a = 0; a < nodes; ++a) {
      const Scalar s = grid.global_nodes(a);
      for (Eigen::Index b = 0; b < nodes; ++b) {
        const Scalar t = grid.global_nodes(b);
        const Scalar k = problem_.kernel_du(s, t, z.values(b));
        detail::check_kernel_value(k, s, t);
        row(b) = grid.global_weights(b) * k;
      }
      const Eigen::Map<const Matrix<Scalar>> by_interval(row.data(), local, grid.n);
      const Matrix<Scalar> block = basis_.transpose() * by_interval / sqrt_h_;  // r x n
      partial.row(a) = Eigen::Map<const Vector<Scalar>>(block.data(), unknowns).transpose();
    }

    Matrix<Scalar> jac = Matrix<Scalar>::Identity(unknowns, unknowns);
    for (int j = 0; j < grid.n; ++j) {
      jac.middleRows(Eigen::Index(j) * r_, r_) -=
          sqrt_h_ * weighted_basis_.transpose() * partial.middleRows(Eigen::Index(j) * local, local);
    }
    return jac;
  }

 private:
  const UrysohnProblem<Scalar>& problem_;
  GridPtr<Scalar> grid_;
  int r_;
  Matrix<Scalar> basis_;
  Matrix<Scalar> weighted_basis_;
  Scalar sqrt_h_;
  Vector<Scalar> rhs_coefficients_;
};

/// Solves z^G - P_n K_m(z^G) = P_n f by Newton's method from c = coefficients of P_n f.
template <typename Scalar>
GalerkinSolution<Scalar> solve_discrete_galerkin(const UrysohnProblem<Scalar>& problem, GridPtr<Scalar> grid,
                                                 int r, const NewtonOptions& newton = {}) {
  if (!grid) throw ParameterError("solve_discrete_galerkin: null grid");
  if (Eigen::Index(grid->n) * r > kMaxGalerkinUnknowns) {
    throw ConfigurationError("solve_discrete_galerkin: n * r exceeds " + std::to_string(kMaxGalerkinUnknowns));
  }
  const GalerkinSystem<Scalar> system(problem, grid, r);
  const auto result = newton_solve<Scalar>([&](const Vector<Scalar>& c) { return system.residual(c); },
                                           [&](const Vector<Scalar>& c) { return system.jacobian(c); },
                                           system.rhs_coefficients(), newton);

  GalerkinSolution<Scalar> solution;
  solution.problem = problem;
  solution.grid = grid;
  solution.r = r;
  solution.z_g = system.unflatten(result.x);
  solution.z_g_node_values = system.node_values(result.x);
  solution.newton_iterations = result.iterations;
  solution.final_residual_norm = result.residual_norm;
  solution.residual_trace = result.residual_trace;
  return solution;
}

/// Convenience overload: builds the composite grid from (n, p, rho).
template <typename Scalar>
GalerkinSolution<Scalar> solve_discrete_galerkin(const UrysohnProblem<Scalar>& problem, int n, int r, int p,
                                                 int rho, const NewtonOptions& newton = {}) {
  if (2 * rho - 1 < 3 * r) {
    throw ConfigurationError("solve_discrete_galerkin: Gauss rule with " + std::to_string(rho) +
                             " points has precision below 3r = " + std::to_string(3 * r));
  }
  auto grid = std::make_shared<const CompositeGrid<Scalar>>(build_grid(n, p, gauss_rule<Scalar>(rho)));
  return solve_discrete_galerkin(problem, std::move(grid), r, newton);
}

/// z^S at the coarse partition points t_i = i/n, i = 0..n.
template <typename Scalar>
PointValues<Scalar> iterated_at_partition(const GalerkinSolution<Scalar>& solution) {
  return sample_partition<Scalar>([&](Scalar s) { return iterated_eval(solution, s); }, solution.grid->n);
}

/// |exact(t_i) - z^S(t_i)| at every partition point, boundaries included.
template <typename Scalar, typename Function>
PointValues<Scalar> partition_point_errors(const GalerkinSolution<Scalar>& solution, const Function& exact) {
  auto out = iterated_at_partition(solution);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    using std::abs;
    out.values(i) = abs(exact(out.t(i)) - out.values(i));
  }
  return out;
}

}  // namespace urysohn
