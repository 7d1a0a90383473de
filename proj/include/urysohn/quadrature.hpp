#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "urysohn/errors.hpp"

namespace urysohn {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Basic interpolatory rule on [0,1]: sum_q w_q g(mu_q) ~ int_0^1 g.
template <typename Scalar>
struct QuadratureRule {
  Vector<Scalar> nodes;
  Vector<Scalar> weights;
  int degree_of_precision = 0;

  Eigen::Index count() const { return nodes.size(); }
};

/// Gauss-Legendre rule with `count` points mapped to [0,1]. Nodes are the roots of P_count
/// found by Newton's method from the Chebyshev-type initial guesses; exact for degree 2*count-1.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_rule(int count) {
  if (count < 1 || count > 20) {
    throw ParameterError("gauss_rule: point count must be in [1, 20], got " + std::to_string(count));
  }
  using std::abs;
  using std::cos;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar tol = 4 * std::numeric_limits<Scalar>::epsilon();

  QuadratureRule<Scalar> rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  rule.degree_of_precision = 2 * count - 1;

  // Roots are symmetric about 0; compute the positive half and mirror.
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(count) + Scalar(0.5)));
    Scalar derivative = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= count; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
      derivative = count * (x * p1 - p0) / (x * x - 1);
      const Scalar step = p1 / derivative;
      x -= step;
      if (abs(step) <= tol) break;
    }
    const Scalar w = 2 / ((1 - x * x) * derivative * derivative);
    // Ascending order on [0,1]: negative root first.
    rule.nodes(i) = (1 - x) / 2;
    rule.nodes(count - 1 - i) = (1 + x) / 2;
    rule.weights(i) = w / 2;
    rule.weights(count - 1 - i) = w / 2;
  }
  return rule;
}

/// Uniform coarse partition t_j = j/n, each subinterval split into p fine pieces, with the
/// basic rule replicated on every fine piece.
///
/// Node ordering is j-major, then fine piece nu, then basic node q; node index
/// ((j * p) + nu) * rho + q.
template <typename Scalar>
struct CompositeGrid {
  int n = 0;
  int p = 0;
  QuadratureRule<Scalar> rule;
  /// mu_{q,nu} = (nu + mu_q) / p on the reference interval, length p * rho.
  Vector<Scalar> composite_offsets;
  /// w_q / p matching composite_offsets; sums to 1.
  Vector<Scalar> composite_weights;
  /// t_{j-1} + mu_{q,nu} h, length m * rho.
  Vector<Scalar> global_nodes;
  /// (h / p) w_q for every global node.
  Vector<Scalar> global_weights;

  int m() const { return n * p; }
  Scalar h() const { return Scalar(1) / n; }
  Scalar h_fine() const { return Scalar(1) / m(); }
  int rho() const { return static_cast<int>(rule.count()); }
  /// Nodes per coarse subinterval.
  int local_count() const { return p * rho(); }
  Eigen::Index size() const { return global_nodes.size(); }
  Scalar partition_point(int j) const { return Scalar(j) / n; }
};

template <typename Scalar>
CompositeGrid<Scalar> build_grid(int n, int p, const QuadratureRule<Scalar>& rule) {
  if (n < 1) throw ParameterError("build_grid: n must be >= 1");
  if (p < 1) throw ParameterError("build_grid: p must be >= 1");
  CompositeGrid<Scalar> grid;
  grid.n = n;
  grid.p = p;
  grid.rule = rule;
  const Eigen::Index rho = rule.count();
  const Eigen::Index local = p * rho;
  grid.composite_offsets.resize(local);
  grid.composite_weights.resize(local);
  for (int nu = 0; nu < p; ++nu) {
    for (Eigen::Index q = 0; q < rho; ++q) {
      grid.composite_offsets(nu * rho + q) = (Scalar(nu) + rule.nodes(q)) / p;
      grid.composite_weights(nu * rho + q) = rule.weights(q) / p;
    }
  }
  const Scalar h = grid.h();
  grid.global_nodes.resize(n * local);
  grid.global_weights.resize(n * local);
  for (int j = 0; j < n; ++j) {
    grid.global_nodes.segment(j * local, local) =
        (grid.composite_offsets.array() + Scalar(j)) * h;
    grid.global_weights.segment(j * local, local) = grid.composite_weights * h;
  }
  return grid;
}

/// (h/p) sum_j sum_nu sum_q w_q g(mu^j_{q,nu}).
template <typename Scalar, typename Function>
Scalar integrate_composite(const Function& g, const CompositeGrid<Scalar>& grid) {
  Scalar sum = 0;
  for (Eigen::Index a = 0; a < grid.size(); ++a) {
    const Scalar value = g(grid.global_nodes(a));
    if (!std::isfinite(static_cast<double>(value))) {
      throw EvaluationError("integrate_composite: non-finite integrand",
                            static_cast<double>(grid.global_nodes(a)));
    }
    sum += grid.global_weights(a) * value;
  }
  return sum;
}

}  // namespace urysohn
