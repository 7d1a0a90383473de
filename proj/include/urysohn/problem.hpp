#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "urysohn/quadrature.hpp"

namespace urysohn {

/// x(s) - int_0^1 kappa(s, t, x(t)) dt = f(s) with a kernel that is smooth on each side of
/// the diagonal s = t. `lower` is the branch on t <= s, `upper` on t > s; the `_du` branches
/// are the analytic partial derivatives with respect to u.
template <typename Scalar>
struct UrysohnProblem {
  using Branch = std::function<Scalar(Scalar s, Scalar t, Scalar u)>;
  using Function = std::function<Scalar(Scalar)>;

  std::string name;
  Branch lower;
  Branch upper;
  Branch lower_du;
  Branch upper_du;
  Function rhs;
  std::optional<Function> exact;

  Scalar kernel(Scalar s, Scalar t, Scalar u) const { return t <= s ? lower(s, t, u) : upper(s, t, u); }
  Scalar kernel_du(Scalar s, Scalar t, Scalar u) const {
    return t <= s ? lower_du(s, t, u) : upper_du(s, t, u);
  }
};

/// kappa or d kappa / du at (s, t, u); ties on the diagonal use the lower branch.
template <typename Scalar>
Scalar kernel_eval(const UrysohnProblem<Scalar>& problem, Scalar s, Scalar t, Scalar u,
                   int u_derivative_order = 0) {
  if (u_derivative_order != 0 && u_derivative_order != 1) {
    throw ParameterError("kernel_eval: derivative order must be 0 or 1");
  }
  if (!(s >= 0 && s <= 1 && t >= 0 && t <= 1)) throw DomainError("kernel_eval: (s, t) outside [0,1]^2");
  const Scalar value = u_derivative_order == 0 ? problem.kernel(s, t, u) : problem.kernel_du(s, t, u);
  if (!std::isfinite(static_cast<double>(value))) {
    throw EvaluationError("kernel_eval: non-finite kernel value at t = " +
                              std::to_string(static_cast<double>(t)),
                          static_cast<double>(s));
  }
  return value;
}

/// Hammerstein problem with the Dirichlet Green's function of -u'' + gamma^2 u on [0,1],
///   G(s,t) = sinh(gamma min(s,t)) sinh(gamma (1 - max(s,t))) / (gamma sinh gamma),
/// psi(t,u) = gamma^2 u - 2u^3 and gamma = sqrt(12). The exact solution is 2 / (2s + 1).
template <typename Scalar = double>
UrysohnProblem<Scalar> rpk_aks_problem() {
  using std::sinh;
  using std::sqrt;
  const Scalar gamma = sqrt(Scalar(12));
  const Scalar scale = 1 / (gamma * sinh(gamma));
  const Scalar g2 = gamma * gamma;

  UrysohnProblem<Scalar> problem;
  problem.name = "rpk-aks";
  problem.lower = [=](Scalar s, Scalar t, Scalar u) {
    return scale * sinh(gamma * t) * sinh(gamma * (1 - s)) * (g2 * u - 2 * u * u * u);
  };
  problem.upper = [=](Scalar s, Scalar t, Scalar u) {
    return scale * sinh(gamma * s) * sinh(gamma * (1 - t)) * (g2 * u - 2 * u * u * u);
  };
  problem.lower_du = [=](Scalar s, Scalar t, Scalar u) {
    return scale * sinh(gamma * t) * sinh(gamma * (1 - s)) * (g2 - 6 * u * u);
  };
  problem.upper_du = [=](Scalar s, Scalar t, Scalar u) {
    return scale * sinh(gamma * s) * sinh(gamma * (1 - t)) * (g2 - 6 * u * u);
  };
  const Scalar sinh_gamma = sinh(gamma);
  problem.rhs = [=](Scalar s) {
    return (2 * sinh(gamma * (1 - s)) + Scalar(2) / 3 * sinh(gamma * s)) / sinh_gamma;
  };
  problem.exact = [](Scalar s) { return 2 / (2 * s + 1); };
  return problem;
}

/// Green's function factor of the rpk-aks kernel.
template <typename Scalar = double>
Scalar rpk_aks_green(Scalar s, Scalar t) {
  using std::max;
  using std::min;
  using std::sinh;
  using std::sqrt;
  const Scalar gamma = sqrt(Scalar(12));
  return sinh(gamma * min(s, t)) * sinh(gamma * (1 - max(s, t))) / (gamma * sinh(gamma));
}

/// kappa == 0, so the solution is the right-hand side itself.
template <typename Scalar = double>
UrysohnProblem<Scalar> zero_kernel_problem(std::function<Scalar(Scalar)> rhs, std::string name = "zero-kernel") {
  UrysohnProblem<Scalar> problem;
  problem.name = std::move(name);
  const auto zero = [](Scalar, Scalar, Scalar) { return Scalar(0); };
  problem.lower = problem.upper = problem.lower_du = problem.upper_du = zero;
  problem.rhs = rhs;
  problem.exact = rhs;
  return problem;
}

/// Sup-norm residual of `candidate` over 101 uniform points. The integral is split at t = s
/// and each side is integrated with composite 10-point Gauss on `panels` panels.
template <typename Scalar, typename Function>
Scalar residual_check(const UrysohnProblem<Scalar>& problem, const Function& candidate, int panels) {
  if (panels < 16) throw ParameterError("residual_check: panels must be >= 16");
  using std::abs;
  const auto rule = gauss_rule<Scalar>(10);
  auto integrate = [&](Scalar a, Scalar b, const auto& integrand) {
    Scalar sum = 0;
    const Scalar width = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
      const Scalar left = a + k * width;
      for (Eigen::Index q = 0; q < rule.count(); ++q) {
        sum += rule.weights(q) * integrand(left + rule.nodes(q) * width);
      }
    }
    return sum * width;
  };

  Scalar worst = 0;
  for (int i = 0; i <= 100; ++i) {
    const Scalar s = Scalar(i) / 100;
    const Scalar below = integrate(Scalar(0), s, [&](Scalar t) { return problem.lower(s, t, candidate(t)); });
    const Scalar above = integrate(s, Scalar(1), [&](Scalar t) { return problem.upper(s, t, candidate(t)); });
    const Scalar residual = abs(candidate(s) - below - above - problem.rhs(s));
    if (residual > worst) worst = residual;
  }
  return worst;
}

}  // namespace urysohn
