#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "urysohn/poly_basis.hpp"
#include "urysohn/quadrature.hpp"

namespace urysohn {

/// Element of the space of piecewise polynomials of degree < r on the uniform n-partition,
/// stored as coefficients in the orthonormal basis
///   phi_{j,eta}(t) = h^{-1/2} L_eta((t - t_j) / h)  on subinterval j (0-based).
///
/// Subinterval j owns (t_j, t_{j+1}]; subinterval 0 also owns t = 0.
template <typename Scalar>
struct PiecewiseLegendre {
  int r = 0;
  int n = 0;
  Matrix<Scalar> coefficients;  ///< n x r, row j holds c_{j,0..r-1}

  Scalar h() const { return Scalar(1) / n; }
};

/// Index of the subinterval owning s under the left-closed-at-zero, right-closed convention.
template <typename Scalar>
int subinterval_of(Scalar s, int n) {
  using std::floor;
  const Scalar x = s * n;
  int j = static_cast<int>(floor(x));
  // Values a few ulps above a partition point are treated as that point.
  const Scalar slack = 8 * std::numeric_limits<Scalar>::epsilon() * (x > 1 ? x : Scalar(1));
  if (j > 0 && x - j <= slack) --j;
  if (j >= n) j = n - 1;
  if (j < 0) j = 0;
  return j;
}

/// L_eta at every local composite offset: (p rho) x r.
template <typename Scalar>
Matrix<Scalar> local_basis(const CompositeGrid<Scalar>& grid, int r) {
  Matrix<Scalar> table(grid.local_count(), r);
  for (int l = 0; l < grid.local_count(); ++l) {
    for (int eta = 0; eta < r; ++eta) table(l, eta) = legendre(eta, grid.composite_offsets(l));
  }
  return table;
}

/// Basic-rule precision must cover products of two degree r-1 polynomials with a degree-r
/// remainder; require 2 rho - 1 >= 3r.
template <typename Scalar>
void require_projection_precision(const CompositeGrid<Scalar>& grid, int r) {
  if (r < 1 || r > kMaxLegendreDegree + 1) {
    throw ParameterError("projection order r must be in [1, 13], got " + std::to_string(r));
  }
  if (grid.rule.degree_of_precision < 3 * r) {
    throw ConfigurationError("quadrature degree of precision " +
                             std::to_string(grid.rule.degree_of_precision) +
                             " is below 3r = " + std::to_string(3 * r));
  }
}

/// <x, y>_{Delta_j, m} = h~ sum_nu sum_q w_q x(node) y(node), j 0-based.
template <typename Scalar, typename FunctionX, typename FunctionY>
Scalar discrete_inner_product(const FunctionX& x, const FunctionY& y, int j,
                              const CompositeGrid<Scalar>& grid) {
  if (j < 0 || j >= grid.n) throw ParameterError("discrete_inner_product: subinterval out of range");
  const int local = grid.local_count();
  Scalar sum = 0;
  for (int l = 0; l < local; ++l) {
    const Scalar t = grid.global_nodes(j * local + l);
    const Scalar value = x(t) * y(t);
    if (!std::isfinite(static_cast<double>(value))) {
      throw EvaluationError("discrete_inner_product: non-finite value", static_cast<double>(t));
    }
    sum += grid.composite_weights(l) * value;
  }
  return sum * grid.h();
}

/// Discrete projection from values at the global quadrature nodes.
template <typename Scalar>
PiecewiseLegendre<Scalar> project_values(const Eigen::Ref<const Vector<Scalar>>& node_values,
                                         const CompositeGrid<Scalar>& grid, int r) {
  require_projection_precision(grid, r);
  if (node_values.size() != grid.size()) {
    throw ParameterError("project_values: expected one value per quadrature node");
  }
  using std::sqrt;
  const int local = grid.local_count();
  const Matrix<Scalar> weighted_basis = grid.composite_weights.asDiagonal() * local_basis(grid, r);
  const Eigen::Map<const Matrix<Scalar>> by_interval(node_values.data(), local, grid.n);

  PiecewiseLegendre<Scalar> out;
  out.r = r;
  out.n = grid.n;
  // c_{j,eta} = h (sum_l cw_l x_l L_eta(off_l)) h^{-1/2}
  out.coefficients = sqrt(grid.h()) * (by_interval.transpose() * weighted_basis);
  return out;
}

/// P_n x: coefficients c_{j,eta} = <x, phi_{j,eta}>_{Delta_j, m}.
template <typename Scalar, typename Function>
PiecewiseLegendre<Scalar> project(const Function& x, const CompositeGrid<Scalar>& grid, int r) {
  require_projection_precision(grid, r);
  Vector<Scalar> values(grid.size());
  for (Eigen::Index a = 0; a < grid.size(); ++a) {
    values(a) = x(grid.global_nodes(a));
    if (!std::isfinite(static_cast<double>(values(a)))) {
      throw EvaluationError("project: non-finite value", static_cast<double>(grid.global_nodes(a)));
    }
  }
  return project_values<Scalar>(values, grid, r);
}

template <typename Scalar>
Scalar evaluate_piecewise(const PiecewiseLegendre<Scalar>& pl, Scalar s) {
  if (!(s >= 0 && s <= 1)) {
    throw DomainError("evaluate_piecewise: s outside [0,1]: " + std::to_string(static_cast<double>(s)));
  }
  using std::sqrt;
  const int j = subinterval_of(s, pl.n);
  Scalar tau = s * pl.n - j;
  if (tau < 0) tau = 0;
  if (tau > 1) tau = 1;
  Scalar sum = 0;
  for (int eta = 0; eta < pl.r; ++eta) sum += pl.coefficients(j, eta) * legendre(eta, tau);
  return sum / sqrt(pl.h());
}

/// Values of a piecewise polynomial at every global node of `grid` (which must share n).
template <typename Scalar>
Vector<Scalar> evaluate_at_nodes(const PiecewiseLegendre<Scalar>& pl, const CompositeGrid<Scalar>& grid) {
  if (pl.n != grid.n) throw ParameterError("evaluate_at_nodes: partition mismatch");
  using std::sqrt;
  const int local = grid.local_count();
  const Matrix<Scalar> basis = local_basis(grid, pl.r);
  Vector<Scalar> values(grid.size());
  Eigen::Map<Matrix<Scalar>> by_interval(values.data(), local, grid.n);
  by_interval = (basis * pl.coefficients.transpose()) / sqrt(pl.h());
  return values;
}

}  // namespace urysohn
