#include <cmath>
#include <memory>

#include <doctest.h>

#include "urysohn/galerkin.hpp"

using namespace urysohn;

namespace {

GridPtr<double> make_grid(int n, int p, int rho) {
  return std::make_shared<const CompositeGrid<double>>(build_grid(n, p, gauss_rule(rho)));
}

double sup_piecewise_error(const PiecewiseLegendre<double>& pl, const std::function<double(double)>& exact) {
  double worst = 0;
  for (int i = 0; i <= 400; ++i) {
    const double s = i / 400.0;
    worst = std::max(worst, std::abs(evaluate_piecewise(pl, s) - exact(s)));
  }
  return worst;
}

}  // namespace

TEST_CASE("power_refinement and minimal_gauss_count") {
  CHECK(power_refinement(20, 1) == 20);
  CHECK(power_refinement(10, 2) == 100);
  CHECK_THROWS_AS(power_refinement(100000, 3), ParameterError);
  CHECK(minimal_gauss_count(1) == 2);
  CHECK(minimal_gauss_count(2) == 4);
  CHECK(minimal_gauss_count(3) == 5);
  for (int r = 1; r <= 6; ++r) {
    const int rho = minimal_gauss_count(r);
    CHECK(2 * rho - 1 >= 3 * r);
    CHECK(2 * (rho - 1) - 1 < 3 * r);
  }
}

TEST_CASE("zero kernel: z^G = P_n f and z^S = f") {
  const auto f = [](double s) { return 1 + s * s; };
  const auto problem = zero_kernel_problem<double>(f);
  for (int r = 1; r <= 3; ++r) {
    CAPTURE(r);
    const auto grid = make_grid(5, 2, minimal_gauss_count(r));
    const auto solution = solve_discrete_galerkin(problem, grid, r);
    CHECK(solution.newton_iterations == 1);
    const auto projected = project(f, *grid, r);
    CHECK((solution.z_g.coefficients - projected.coefficients).cwiseAbs().maxCoeff() < 1e-14);
    for (double s : {0.0, 0.2, 0.55, 1.0}) CHECK(iterated_eval(solution, s) == doctest::Approx(f(s)).epsilon(1e-15));
    if (r == 3) {
      for (double s : {0.13, 0.77}) CHECK(std::abs(evaluate_piecewise(solution.z_g, s) - f(s)) < 1e-13);
    }
  }
}

TEST_CASE("GalerkinSystem: flatten and unflatten are inverse") {
  const auto problem = rpk_aks_problem();
  const GalerkinSystem<double> system(problem, make_grid(3, 2, 4), 2);
  Vector<double> c(system.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = 0.5 * i - 1;
  const auto pl = system.unflatten(c);
  CHECK(pl.coefficients(1, 0) == c(2));
  CHECK(pl.coefficients(1, 1) == c(3));
  CHECK(GalerkinSystem<double>::flatten(pl) == c);
}

TEST_CASE("GalerkinSystem: Jacobian matches finite differences of the residual") {
  const auto problem = rpk_aks_problem();
  const GalerkinSystem<double> system(problem, make_grid(4, 16, 4), 2);
  Vector<double> c = system.rhs_coefficients();
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) += 0.05 * std::sin(1.0 + i);
  const auto jac = system.jacobian(c);
  const auto f0 = system.residual(c);
  const double eps = 1e-6;
  double worst = 0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    Vector<double> shifted = c;
    shifted(k) += eps;
    const Vector<double> column = (system.residual(shifted) - f0) / eps;
    worst = std::max(worst, (column - jac.col(k)).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("solve_discrete_galerkin: rpk-aks identities") {
  const auto problem = rpk_aks_problem();
  for (int r = 1; r <= 2; ++r) {
    CAPTURE(r);
    const int n = 6;
    const auto grid = make_grid(n, power_refinement(n, r), minimal_gauss_count(r));
    const NewtonOptions newton{1e-12, 50};
    const auto solution = solve_discrete_galerkin(problem, grid, r, newton);
    CHECK(solution.newton_iterations <= 8);
    CHECK(solution.final_residual_norm <= newton.tol);

    // P_n z^S = z^G: the Galerkin equation itself.
    const auto projected = project(IteratedSolution<double>{solution}, *grid, r);
    CHECK((projected.coefficients - solution.z_g.coefficients).cwiseAbs().maxCoeff() <= 1e-10);

    // Stored node values are the piecewise polynomial evaluated at the nodes.
    for (Eigen::Index a = 0; a < grid->size(); ++a) {
      CHECK(std::abs(solution.z_g_node_values.values(a) - evaluate_piecewise(solution.z_g, grid->global_nodes(a))) <=
            1e-13);
    }

    // Errors against z^S itself vanish.
    const auto self = partition_point_errors(solution, IteratedSolution<double>{solution});
    CHECK(self.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(self.size() == n + 1);
  }
}

TEST_CASE("solve_discrete_galerkin: ||z^G - phi|| is first order for r = 1") {
  const auto problem = rpk_aks_problem();
  double previous = 0;
  for (int n : {10, 20, 40}) {
    const auto solution = solve_discrete_galerkin(problem, n, 1, n, 2);
    const double err = sup_piecewise_error(solution.z_g, *problem.exact);
    if (previous > 0) {
      CAPTURE(n);
      CHECK(std::abs(std::log2(previous / err) - 1.0) <= 0.1);
    }
    previous = err;
  }
}

TEST_CASE("solve_discrete_galerkin: iterated solution at the partition points") {
  const auto problem = rpk_aks_problem();
  double previous = 0;
  // n = 10 is still pre-asymptotic (observed order ~1.88 from 10 to 20).
  for (int n : {20, 40}) {
    const auto solution = solve_discrete_galerkin(problem, n, 1, n, 2);
    const auto errors = partition_point_errors(solution, *problem.exact);
    const double interior = errors.values.segment(1, n - 1).maxCoeff();
    CHECK(errors.values(0) <= 10 * interior);
    CHECK(errors.values(n) <= 10 * interior);
    const double worst = errors.values.maxCoeff();
    if (previous > 0) CHECK(std::abs(std::log2(previous / worst) - 2.0) <= 0.05);
    previous = worst;
  }
}

TEST_CASE("solve_discrete_galerkin: configuration guards") {
  const auto problem = rpk_aks_problem();
  CHECK_THROWS_AS(solve_discrete_galerkin(problem, 4, 1, 4, 1), ConfigurationError);
  CHECK_THROWS_AS(solve_discrete_galerkin(problem, 4, 2, 4, 3), ConfigurationError);
  CHECK_THROWS_AS(solve_discrete_galerkin(problem, make_grid(4, 4, 1), 1), ConfigurationError);
  CHECK_THROWS_AS(solve_discrete_galerkin(problem, make_grid(2001, 1, 2), 1), ConfigurationError);
  CHECK_THROWS_AS(solve_discrete_galerkin(problem, GridPtr<double>{}, 1), ParameterError);
}
