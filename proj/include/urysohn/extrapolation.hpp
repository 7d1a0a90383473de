#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/galerkin.hpp"
#include "urysohn/point_values.hpp"

namespace urysohn {

/// Errors at or below this level are rounding noise; no order is estimated from them.
inline constexpr double kErrorFloor = 1e-14;

/// Richardson extrapolation of values with an h^{2r} leading error term:
///   (2^{2r} fine(t_i) - coarse(t_i)) / (2^{2r} - 1) at the coarse points.
template <typename Scalar>
PointValues<Scalar> richardson(const PointValues<Scalar>& coarse, const PointValues<Scalar>& fine, int r) {
  if (r < 1) throw ParameterError("richardson: r must be >= 1");
  if (coarse.size() < 2 || fine.size() != 2 * (coarse.size() - 1) + 1) {
    throw AlignmentError("richardson: fine partition must have twice as many subintervals as coarse");
  }
  using std::abs;
  using std::ldexp;
  const Scalar weight = ldexp(Scalar(1), 2 * r);
  PointValues<Scalar> out{coarse.t, Vector<Scalar>(coarse.size())};
  for (Eigen::Index i = 0; i < coarse.size(); ++i) {
    if (abs(coarse.t(i) - fine.t(2 * i)) > Scalar(1e-14)) {
      throw AlignmentError("richardson: partition point " + std::to_string(i) + " does not coincide");
    }
    out.values(i) = (weight * fine.values(2 * i) - coarse.values(i)) / (weight - 1);
  }
  return out;
}

/// log2(e_coarse / e_fine), or nothing when either error is at the rounding floor.
template <typename Scalar>
std::optional<Scalar> estimate_order(Scalar e_coarse, Scalar e_fine) {
  using std::log2;
  if (!(e_coarse > Scalar(kErrorFloor)) || !(e_fine > Scalar(kErrorFloor))) return std::nullopt;
  return log2(e_coarse / e_fine);
}

/// Per-point orders between a level and its doubled successor, at the coarse points.
template <typename Scalar>
std::vector<std::optional<Scalar>> estimate_orders(const Vector<Scalar>& coarse, const Vector<Scalar>& fine) {
  std::vector<std::optional<Scalar>> out(coarse.size());
  for (Eigen::Index i = 0; i < coarse.size(); ++i) out[i] = estimate_order(coarse(i), fine(2 * i));
  return out;
}

using RefinementRule = std::function<int(int n, int r)>;

inline RefinementRule power_rule() { return [](int n, int r) { return power_refinement(n, r); }; }
inline RefinementRule fixed_rule(int p) { return [p](int, int) { return p; }; }

struct StudyOptions {
  int r = 1;
  std::vector<int> n_list;
  RefinementRule refinement = power_rule();
  int rho = 0;  ///< 0 selects the smallest Gauss rule with precision >= 3r
  NewtonOptions newton;
  bool concurrent = true;
};

/// One rung of the ladder. Orders and extrapolated errors refer to this level's partition
/// points and need the next one (or two) levels at exactly twice the resolution.
template <typename Scalar>
struct ConvergenceLevel {
  int n = 0;
  int p = 0;
  int m = 0;
  double seconds = 0;
  int newton_iterations = 0;
  double final_residual_norm = 0;
  PointValues<Scalar> iterated;  ///< z_n^S at t_i
  Vector<Scalar> eps_s;
  std::vector<std::optional<Scalar>> order_s;
  std::optional<PointValues<Scalar>> extrapolated;  ///< z_n^EX at t_i
  std::optional<Vector<Scalar>> eps_ex;
  std::vector<std::optional<Scalar>> order_ex;
};

template <typename Scalar>
struct ConvergenceReport {
  std::string problem;
  int r = 0;
  int rho = 0;
  std::vector<ConvergenceLevel<Scalar>> levels;
};

/// Solves the discrete Galerkin problem on each n of the ladder, then compares z^S and the
/// Richardson combination against the exact solution at the partition points.
template <typename Scalar>
ConvergenceReport<Scalar> convergence_study(const UrysohnProblem<Scalar>& problem, const StudyOptions& options) {
  if (!problem.exact) throw ParameterError("convergence_study: problem '" + problem.name + "' has no exact solution");
  if (options.n_list.empty()) throw ParameterError("convergence_study: empty n list");
  for (std::size_t i = 0; i < options.n_list.size(); ++i) {
    if (options.n_list[i] < 1 || (i > 0 && options.n_list[i] <= options.n_list[i - 1])) {
      throw ParameterError("convergence_study: n list must be positive and strictly increasing");
    }
  }
  const int r = options.r;
  const int rho = options.rho > 0 ? options.rho : minimal_gauss_count(r);
  const auto rule = gauss_rule<Scalar>(rho);
  const auto& exact = *problem.exact;

  auto solve_level = [&](int n) {
    ConvergenceLevel<Scalar> level;
    level.n = n;
    level.p = options.refinement(n, r);
    level.m = n * level.p;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto grid = std::make_shared<const CompositeGrid<Scalar>>(build_grid(n, level.p, rule));
      const auto solution = solve_discrete_galerkin(problem, grid, r, options.newton);
      level.iterated = iterated_at_partition(solution);
      level.newton_iterations = solution.newton_iterations;
      level.final_residual_norm = static_cast<double>(solution.final_residual_norm);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("n = " + std::to_string(n) + ": " + e.what(), e.residual_trace());
    } catch (const SingularJacobianError& e) {
      throw SingularJacobianError("n = " + std::to_string(n) + ": " + e.what());
    } catch (const ConfigurationError& e) {
      throw ConfigurationError("n = " + std::to_string(n) + ": " + e.what());
    }
    level.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    level.eps_s.resize(level.iterated.size());
    for (Eigen::Index i = 0; i < level.iterated.size(); ++i) {
      using std::abs;
      level.eps_s(i) = abs(exact(level.iterated.t(i)) - level.iterated.values(i));
    }
    return level;
  };

  ConvergenceReport<Scalar> report;
  report.problem = problem.name;
  report.r = r;
  report.rho = rho;
  if (options.concurrent && options.n_list.size() > 1) {
    std::vector<std::future<ConvergenceLevel<Scalar>>> pending;
    for (int n : options.n_list) pending.push_back(std::async(std::launch::async, solve_level, n));
    for (auto& f : pending) report.levels.push_back(f.get());
  } else {
    for (int n : options.n_list) report.levels.push_back(solve_level(n));
  }

  auto& levels = report.levels;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    auto& coarse = levels[i];
    const auto& fine = levels[i + 1];
    if (fine.n != 2 * coarse.n) continue;
    coarse.order_s = estimate_orders(coarse.eps_s, fine.eps_s);
    coarse.extrapolated = richardson(coarse.iterated, fine.iterated, r);
    Vector<Scalar> eps(coarse.n + 1);
    for (Eigen::Index k = 0; k < eps.size(); ++k) {
      using std::abs;
      eps(k) = abs(exact(coarse.extrapolated->t(k)) - coarse.extrapolated->values(k));
    }
    coarse.eps_ex = std::move(eps);
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i].eps_ex && levels[i + 1].eps_ex) {
      levels[i].order_ex = estimate_orders(*levels[i].eps_ex, *levels[i + 1].eps_ex);
    }
  }
  return report;
}

}  // namespace urysohn
