#include <cmath>
#include <random>

#include <doctest.h>

#include "oracle.hpp"
#include "urysohn/quadrature.hpp"

using namespace urysohn;

TEST_CASE("gauss_rule: one point is the midpoint rule") {
  const auto rule = gauss_rule(1);
  REQUIRE(rule.count() == 1);
  CHECK(rule.nodes(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rule.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rule.degree_of_precision == 1);
}

TEST_CASE("gauss_rule: two points solve the moment equations") {
  // Symmetric candidate (3 -+ sqrt3)/6 with weights 1/2; confirm it satisfies
  // sum w mu^k = 1/(k+1) for k = 0..3 before using it as the reference.
  const double a = (3 - std::sqrt(3.0)) / 6;
  const double b = (3 + std::sqrt(3.0)) / 6;
  for (int k = 0; k <= 3; ++k) {
    CHECK(0.5 * std::pow(a, k) + 0.5 * std::pow(b, k) == doctest::Approx(1.0 / (k + 1)).epsilon(1e-15));
  }
  const auto rule = gauss_rule(2);
  CHECK(std::abs(rule.nodes(0) - a) < 1e-15);
  CHECK(std::abs(rule.nodes(1) - b) < 1e-15);
  CHECK(std::abs(rule.weights(0) - 0.5) < 1e-15);
  CHECK(std::abs(rule.weights(1) - 0.5) < 1e-15);
  CHECK(rule.nodes(0) == doctest::Approx(0.211325).epsilon(1e-6));

  const double t3 = rule.weights(0) * std::pow(rule.nodes(0), 3) + rule.weights(1) * std::pow(rule.nodes(1), 3);
  CHECK(std::abs(t3 - 0.25) < 1e-15);
}

TEST_CASE("gauss_rule: invariants for every supported size") {
  for (int rho = 1; rho <= 20; ++rho) {
    CAPTURE(rho);
    const auto rule = gauss_rule(rho);
    CHECK(rule.degree_of_precision == 2 * rho - 1);
    CHECK(std::abs(rule.weights.sum() - 1.0) <= 1e-14);
    CHECK(rule.weights.minCoeff() > 0);
    CHECK(rule.nodes(0) > 0);
    CHECK(rule.nodes(rho - 1) < 1);
    for (int q = 1; q < rho; ++q) CHECK(rule.nodes(q) > rule.nodes(q - 1));
    for (int k = 0; k <= rule.degree_of_precision; ++k) {
      CAPTURE(k);
      const double sum = (rule.weights.array() * rule.nodes.array().pow(k)).sum();
      CHECK(std::abs(sum - 1.0 / (k + 1)) <= 1e-13);
    }
  }
}

TEST_CASE("gauss_rule: rejects unsupported sizes") {
  CHECK_THROWS_AS(gauss_rule(0), ParameterError);
  CHECK_THROWS_AS(gauss_rule(21), ParameterError);
}

TEST_CASE("gauss_rule: long double instantiation") {
  const auto rule = gauss_rule<long double>(5);
  CHECK(std::abs(static_cast<double>(rule.weights.sum() - 1.0L)) < 1e-17);
}

TEST_CASE("build_grid: composite offsets and nodes") {
  SUBCASE("n=1, p=2, rho=2") {
    const auto grid = build_grid(1, 2, gauss_rule(2));
    REQUIRE(grid.composite_offsets.size() == 4);
    const double a = (3 - std::sqrt(3.0)) / 6;
    const double b = (3 + std::sqrt(3.0)) / 6;
    CHECK(grid.composite_offsets(0) == doctest::Approx(a / 2));
    CHECK(grid.composite_offsets(1) == doctest::Approx(b / 2));
    CHECK(grid.composite_offsets(2) == doctest::Approx((1 + a) / 2));
    CHECK(grid.composite_offsets(3) == doctest::Approx((1 + b) / 2));
    CHECK(grid.composite_offsets(0) == doctest::Approx(0.105662).epsilon(1e-6));
    CHECK(grid.composite_offsets(3) == doctest::Approx(0.894338).epsilon(1e-6));
  }
  SUBCASE("n=2, p=1, rho=1 gives midpoints") {
    const auto grid = build_grid(2, 1, gauss_rule(1));
    REQUIRE(grid.size() == 2);
    CHECK(grid.global_nodes(0) == doctest::Approx(0.25));
    CHECK(grid.global_nodes(1) == doctest::Approx(0.75));
  }
  SUBCASE("n=20, p=20") {
    const auto grid = build_grid(20, 20, gauss_rule(2));
    CHECK(grid.m() == 400);
    CHECK(grid.h_fine() == doctest::Approx(1.0 / 400));
    CHECK(grid.size() == 800);
  }
}

TEST_CASE("build_grid: invariants") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(1, 9);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = small(rng);
    const int p = small(rng);
    const int rho = small(rng);
    CAPTURE(n);
    CAPTURE(p);
    CAPTURE(rho);
    const auto grid = build_grid(n, p, gauss_rule(rho));
    CHECK(grid.size() == n * p * rho);
    CHECK(grid.composite_offsets.minCoeff() > 0);
    CHECK(grid.composite_offsets.maxCoeff() < 1);
    CHECK(std::abs(grid.global_weights.sum() - 1.0) < 1e-13);
    for (Eigen::Index a = 1; a < grid.size(); ++a) CHECK(grid.global_nodes(a) > grid.global_nodes(a - 1));
    // Nodes sit strictly inside fine subintervals.
    for (Eigen::Index a = 0; a < grid.size(); ++a) {
      const double scaled = grid.global_nodes(a) * grid.m();
      CHECK(std::abs(scaled - std::round(scaled)) > 1e-9);
    }
    const auto again = build_grid(n, p, gauss_rule(rho));
    CHECK(again.global_nodes == grid.global_nodes);
    CHECK(again.global_weights == grid.global_weights);
  }
  CHECK_THROWS_AS(build_grid(0, 1, gauss_rule(1)), ParameterError);
  CHECK_THROWS_AS(build_grid(1, 0, gauss_rule(1)), ParameterError);
}

TEST_CASE("integrate_composite: examples") {
  const auto grid = build_grid(3, 2, gauss_rule(2));
  CHECK(std::abs(integrate_composite([](double) { return 1.0; }, grid) - 1.0) < 1e-15);
  CHECK(std::abs(integrate_composite([](double t) { return t; }, grid) - 0.5) < 1e-15);
}

TEST_CASE("integrate_composite: t^4 defect on n=2, p=1, rho=2") {
  // Two-point Gauss on [a, a+H] has error -H^5 g''''/4320 for a quartic; g'''' = 24 and two
  // subintervals of width 1/2 give a total defect of -2 * 24 / (32 * 4320) = -1/2880.
  const auto grid = build_grid(2, 1, gauss_rule(2));
  const double composite = integrate_composite([](double t) { return std::pow(t, 4); }, grid);
  const oracle::Poly quartic{{0, 0, 0, 0, 1}};
  const double exact = quartic.integral();
  CHECK(exact == doctest::Approx(0.2));
  CHECK(std::abs(composite - (exact - 1.0 / 2880)) < 1e-14);
}

TEST_CASE("integrate_composite: exact for global polynomials of degree <= 2 rho - 1") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(1, 6);
  std::uniform_real_distribution<double> coeff(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int rho = small(rng);
    const auto grid = build_grid(small(rng), small(rng), gauss_rule(rho));
    oracle::Poly q;
    for (int k = 0; k <= 2 * rho - 1; ++k) q.c.push_back(coeff(rng));
    CHECK(std::abs(integrate_composite(q, grid) - q.integral()) <= 1e-12);
  }
}

TEST_CASE("integrate_composite: halving the fine step shrinks the error for e^t") {
  const double exact = std::exp(1.0) - 1;
  for (int rho = 1; rho <= 3; ++rho) {
    double previous = 0;
    for (int m : {4, 8, 16}) {
      const double err = std::abs(integrate_composite([](double t) { return std::exp(t); },
                                                      build_grid(m, 1, gauss_rule(rho))) - exact);
      if (previous > 0 && err > 1e-15) CHECK(previous / err >= 3.5);
      previous = err;
    }
  }
}

TEST_CASE("integrate_composite: non-finite integrand reports the node") {
  const auto grid = build_grid(2, 1, gauss_rule(1));
  try {
    integrate_composite([](double t) { return t > 0.5 ? std::nan("") : 1.0; }, grid);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.location() == doctest::Approx(0.75));
  }
}
