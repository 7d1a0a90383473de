#include <cmath>
#include <memory>

#include <doctest.h>

#include "urysohn/nystrom.hpp"

using namespace urysohn;

namespace {

GridPtr<double> make_grid(int n, int p, int rho) {
  return std::make_shared<const CompositeGrid<double>>(build_grid(n, p, gauss_rule(rho)));
}

/// kappa(s, t, u) = u: K x = int x, which has eigenvalue 1 on constants.
UrysohnProblem<double> identity_kernel() {
  UrysohnProblem<double> problem;
  problem.name = "identity";
  problem.lower = problem.upper = [](double, double, double u) { return u; };
  problem.lower_du = problem.upper_du = [](double, double, double) { return 1.0; };
  problem.rhs = [](double s) { return s; };
  return problem;
}

double sup_node_error(const NystromSolution<double>& solution, const std::function<double(double)>& exact) {
  double worst = 0;
  const auto& grid = *solution.grid;
  for (Eigen::Index a = 0; a < grid.size(); ++a) {
    worst = std::max(worst, std::abs(solution.node_values.values(a) - exact(grid.global_nodes(a))));
  }
  return worst;
}

}  // namespace

TEST_CASE("apply_km: examples") {
  const auto builtin = rpk_aks_problem();
  const auto grid = make_grid(5, 3, 2);
  const auto zero = sample<double>([](double) { return 0.0; }, grid);
  for (double s : {0.0, 0.3, 1.0}) CHECK(apply_km(builtin, zero, s) == 0.0);

  const auto linear = identity_kernel();
  const auto constant = sample<double>([](double) { return 2.5; }, grid);
  CHECK(apply_km(linear, constant, 0.4) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(apply_km(linear, constant, 1.2), DomainError);
}

TEST_CASE("apply_km: O(h~^2) consistency on the exact solution") {
  const auto problem = rpk_aks_problem();
  const auto& exact = *problem.exact;
  const double s = 1.0 / 3;  // never a fine-grid point for these m
  double previous = 0;
  for (int m : {50, 100, 200}) {
    const auto phi = sample<double>(exact, make_grid(m, 1, 2));
    const double err = std::abs(apply_km(problem, phi, s) - (exact(s) - problem.rhs(s)));
    if (previous > 0) {
      const double order = std::log2(previous / err);
      CAPTURE(m);
      CHECK(order == doctest::Approx(2.0).epsilon(0.1));
    }
    previous = err;
  }
}

TEST_CASE("km_prime_apply: examples and finite differences") {
  const auto grid = make_grid(4, 3, 2);
  const auto linear = identity_kernel();
  const auto v = sample<double>([](double t) { return std::sin(4 * t); }, grid);
  const auto zero = sample<double>([](double) { return 0.0; }, grid);
  CHECK(km_prime_apply(linear, v, zero, 0.3) == 0.0);
  CHECK(km_prime_apply(linear, zero, v, 0.3) ==
        doctest::Approx(integrate_composite([](double t) { return std::sin(4 * t); }, *grid)).epsilon(1e-14));

  const auto builtin = rpk_aks_problem();
  const auto base = sample<double>([](double t) { return 1 + t * t; }, grid);
  const double eps = 1e-6;
  GridFunction<double> shifted{grid, base.values + eps * v.values};
  for (double s : {0.1, 0.45, 0.8}) {
    const double fd = (apply_km(builtin, shifted, s) - apply_km(builtin, base, s)) / eps;
    CHECK(std::abs(fd - km_prime_apply(builtin, base, v, s)) <= 1e-5);
  }
}

TEST_CASE("solve_nystrom: zero kernel returns f after one step") {
  const auto problem = zero_kernel_problem<double>([](double s) { return std::exp(s); });
  const auto grid = make_grid(6, 2, 2);
  const auto solution = solve_nystrom(problem, grid);
  CHECK(solution.newton_iterations == 1);
  for (Eigen::Index a = 0; a < grid->size(); ++a) {
    CHECK(solution.node_values.values(a) == std::exp(grid->global_nodes(a)));
  }
}

TEST_CASE("solve_nystrom: rpk-aks at m = 100") {
  const auto problem = rpk_aks_problem();
  const auto grid = make_grid(100, 1, 2);
  const NewtonOptions newton{1e-12, 50};
  const auto solution = solve_nystrom(problem, grid, newton);
  CHECK(solution.newton_iterations <= 8);
  CHECK(solution.final_residual_norm <= 1e-12);
  CHECK(sup_node_error(solution, *problem.exact) <= 5e-4);

  // Natural extension reproduces the stored node values.
  for (Eigen::Index a = 0; a < grid->size(); a += 7) {
    CHECK(std::abs(solution(grid->global_nodes(a)) - solution.node_values.values(a)) <= 10 * newton.tol);
  }

  // Quadratic convergence once in the asymptotic regime.
  const auto& trace = solution.residual_trace;
  for (std::size_t k = 1; k + 1 < trace.size(); ++k) {
    if (trace[k] < 1e-2 && trace[k + 1] > 1e-13) CHECK(trace[k + 1] <= 10 * trace[k] * trace[k]);
  }
}

TEST_CASE("solve_nystrom: node error is second order in h~") {
  const auto problem = rpk_aks_problem();
  double previous = 0;
  for (int m : {50, 100, 200}) {
    const double err = sup_node_error(solve_nystrom(problem, make_grid(m, 1, 2)), *problem.exact);
    if (previous > 0) CHECK(std::abs(std::log2(previous / err) - 2.0) <= 0.1);
    previous = err;
  }
}

TEST_CASE("nystrom_jacobian: matches finite differences of the residual") {
  const auto problem = rpk_aks_problem();
  const auto grid = make_grid(4, 2, 2);
  const auto x = sample<double>([](double t) { return 2 / (2 * t + 1) + 0.1 * std::sin(7 * t); }, grid);
  const auto jac = nystrom_jacobian(problem, x);
  const auto r0 = nystrom_residual(problem, x);
  const double eps = 1e-6;
  for (Eigen::Index b = 0; b < grid->size(); ++b) {
    auto shifted = x;
    shifted.values(b) += eps;
    const Vector<double> column = (nystrom_residual(problem, shifted) - r0) / eps;
    CHECK((column - jac.col(b)).cwiseAbs().maxCoeff() <= 1e-5);
  }
}

TEST_CASE("solve_nystrom: failure modes") {
  SUBCASE("singular Jacobian") {
    CHECK_THROWS_AS(solve_nystrom(identity_kernel(), make_grid(4, 1, 2)), SingularJacobianError);
  }
  SUBCASE("iteration limit carries the residual trace") {
    try {
      solve_nystrom(rpk_aks_problem(), make_grid(10, 1, 2), NewtonOptions{1e-12, 1});
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.residual_trace().size() == 2);
    }
  }
  SUBCASE("dense-solve guard") {
    CHECK_THROWS_AS(solve_nystrom(rpk_aks_problem(), make_grid(2501, 1, 2)), ConfigurationError);
  }
  SUBCASE("non-finite kernel") {
    auto problem = rpk_aks_problem();
    problem.upper = [](double, double, double) { return std::nan(""); };
    CHECK_THROWS_AS(solve_nystrom(problem, make_grid(4, 1, 2)), EvaluationError);
  }
}
