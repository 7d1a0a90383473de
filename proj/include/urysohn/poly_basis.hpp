#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "urysohn/quadrature.hpp"

namespace urysohn {

inline constexpr int kMaxLegendreDegree = 12;
inline constexpr int kMaxBernoulliDegree = 10;

/// Orthonormal shifted Legendre polynomial on [0,1]: sqrt(2 eta + 1) P_eta(2t - 1).
template <typename Scalar>
Scalar legendre(int degree, Scalar t) {
  if (degree < 0 || degree > kMaxLegendreDegree) {
    throw ParameterError("legendre: degree must be in [0, 12], got " + std::to_string(degree));
  }
  if (!(t >= 0 && t <= 1)) {
    throw DomainError("legendre: t outside [0,1]: " + std::to_string(static_cast<double>(t)));
  }
  using std::sqrt;
  const Scalar x = 2 * t - 1;
  Scalar p0 = 1;
  Scalar p1 = x;
  if (degree == 0) return 1;
  for (int k = 2; k <= degree; ++k) {
    const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return sqrt(Scalar(2 * degree + 1)) * p1;
}

/// Reproducing kernel of polynomials of degree < r on [0,1].
template <typename Scalar>
Scalar lambda_r(int r, Scalar tau, Scalar s) {
  if (r < 1 || r > kMaxLegendreDegree + 1) {
    throw ParameterError("lambda_r: r must be in [1, 13]");
  }
  Scalar sum = 0;
  for (int eta = 0; eta < r; ++eta) sum += legendre(eta, tau) * legendre(eta, s);
  return sum;
}

namespace detail {

/// Smallest Gauss point count exact for polynomials of the given degree.
inline int gauss_count_for_degree(int degree) { return degree / 2 + 1; }

template <typename Scalar>
Scalar factorial(int k) {
  Scalar f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <typename Scalar>
Scalar int_pow(Scalar base, int exponent) {
  Scalar out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

/// Monomial coefficients of B_k, lowest order first, from B_0 = 1, B_k' = k B_{k-1} and
/// int_0^1 B_k = 0.
template <typename Scalar>
std::vector<Scalar> bernoulli_coefficients(int k) {
  std::vector<Scalar> c{Scalar(1)};
  for (int order = 1; order <= k; ++order) {
    std::vector<Scalar> next(order + 1, Scalar(0));
    for (int i = 0; i < order; ++i) next[i + 1] = order * c[i] / (i + 1);
    Scalar mean = 0;
    for (int i = 1; i <= order; ++i) mean += next[i] / (i + 1);
    next[0] = -mean;
    c = std::move(next);
  }
  return c;
}

}  // namespace detail

/// J_k(tau) = int_0^1 Lambda_r(tau, s) (s - tau)^k / k! ds, evaluated exactly by Gauss quadrature.
template <typename Scalar>
Scalar j_k(int r, int k, Scalar tau) {
  if (r < 1) throw ParameterError("j_k: r must be >= 1");
  if (k < 1 || k > 2 * r + 1) {
    throw ParameterError("j_k: k must be in [1, 2r+1], got " + std::to_string(k));
  }
  const auto rule = gauss_rule<Scalar>(detail::gauss_count_for_degree(r - 1 + k));
  const Scalar k_factorial = detail::factorial<Scalar>(k);
  Scalar sum = 0;
  for (Eigen::Index q = 0; q < rule.count(); ++q) {
    const Scalar s = rule.nodes(q);
    sum += rule.weights(q) * lambda_r(r, tau, s) * detail::int_pow<Scalar>(s - tau, k);
  }
  return sum / k_factorial;
}

/// Bernoulli polynomial B_k(s) with the B_1(s) = s - 1/2 convention.
template <typename Scalar>
Scalar bernoulli(int k, Scalar s) {
  if (k < 0 || k > kMaxBernoulliDegree) {
    throw ParameterError("bernoulli: degree must be in [0, 10], got " + std::to_string(k));
  }
  const auto c = detail::bernoulli_coefficients<Scalar>(k);
  Scalar value = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * s + *it;
  return value;
}

/// bbar_{2r,p} = int int Lambda_r(tau,s) (tau-s)^p / p! B_{2r-p}(s) / (2r-p)! dtau ds.
///
/// The integrand has degree r-1+p in tau and 3r-1 in s, so a tensor Gauss rule with
/// 2r+1 points per direction integrates it exactly.
template <typename Scalar>
Scalar bbar(int r, int p_index) {
  if (r < 1 || 2 * r > kMaxBernoulliDegree) throw ParameterError("bbar: r must be in [1, 5]");
  if (p_index < 1 || p_index > 2 * r) {
    throw ParameterError("bbar: p must be in [1, 2r], got " + std::to_string(p_index));
  }
  const auto rule = gauss_rule<Scalar>(2 * r + 1);
  const Scalar scale =
      detail::factorial<Scalar>(p_index) * detail::factorial<Scalar>(2 * r - p_index);
  Scalar sum = 0;
  for (Eigen::Index a = 0; a < rule.count(); ++a) {
    const Scalar tau = rule.nodes(a);
    for (Eigen::Index b = 0; b < rule.count(); ++b) {
      const Scalar s = rule.nodes(b);
      sum += rule.weights(a) * rule.weights(b) * lambda_r(r, tau, s) *
             detail::int_pow<Scalar>(tau - s, p_index) * bernoulli(2 * r - p_index, s);
    }
  }
  return sum / scale;
}

/// int_0^1 J_r(tau)^2 dtau; J_r has degree <= 2r-1.
template <typename Scalar>
Scalar j_square_integral(int r) {
  if (r < 1) throw ParameterError("j_square_integral: r must be >= 1");
  const auto rule = gauss_rule<Scalar>(2 * r);
  Scalar sum = 0;
  for (Eigen::Index q = 0; q < rule.count(); ++q) {
    const Scalar value = j_k(r, r, rule.nodes(q));
    sum += rule.weights(q) * value * value;
  }
  return sum;
}

/// Bundle of the expansion constants for one order r.
template <typename Scalar>
struct AsymptoticCoefficients {
  int r = 0;
  Vector<Scalar> bbar;  ///< index p-1 holds bbar_{2r,p}
  Scalar j_square_integral = 0;

  Scalar j(int k, Scalar tau) const { return j_k(r, k, tau); }
};

template <typename Scalar>
AsymptoticCoefficients<Scalar> asymptotic_coefficients(int r) {
  AsymptoticCoefficients<Scalar> out;
  out.r = r;
  out.bbar.resize(2 * r);
  for (int p = 1; p <= 2 * r; ++p) out.bbar(p - 1) = bbar<Scalar>(r, p);
  out.j_square_integral = j_square_integral<Scalar>(r);
  return out;
}

}  // namespace urysohn
