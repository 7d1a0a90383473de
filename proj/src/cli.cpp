#include "urysohn/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "urysohn/extrapolation.hpp"
#include "urysohn/galerkin.hpp"
#include "urysohn/nystrom.hpp"
#include "urysohn/registry.hpp"
#include "urysohn/report_io.hpp"

namespace urysohn::cli {
namespace {

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::kCsv;
  if (text == "md") return Format::kMarkdown;
  if (text == "json") return Format::kJson;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv, md or json)");
}

int effective_rho(const RunConfig& config) {
  if (config.rho > 0) return config.rho;
  // The Nystrom method has no projection-precision requirement; keep the same default.
  return minimal_gauss_count(config.r);
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (!config.output) {
    out << text;
    return;
  }
  std::ofstream file(*config.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + *config.output + "'");
  file << text;
}

std::string render_summary(const RunConfig& config, const SolveSummary& summary) {
  switch (config.format) {
    case Format::kCsv: return summary_to_csv(summary);
    case Format::kJson: return summary_to_json(summary).dump(2) + "\n";
    case Format::kMarkdown: break;
  }
  return summary_to_markdown(summary);
}

int run_solve(const RunConfig& config, std::ostream& out) {
  const auto problem = make_problem(config.problem);
  const int n = config.n_list.front();
  const int p = refinement_for(config.p_rule, n, config.r);
  const int rho = effective_rho(config);
  const NewtonOptions newton{config.tol, config.max_iter};
  auto grid = std::make_shared<const CompositeGrid<double>>(build_grid(n, p, gauss_rule<double>(rho)));

  SolveSummary summary;
  summary.problem = problem.name;
  summary.method = config.method;
  summary.n = n;
  summary.p = p;
  summary.rho = rho;
  summary.r = config.r;
  const auto start = std::chrono::steady_clock::now();
  if (config.method == "galerkin") {
    const auto solution = solve_discrete_galerkin(problem, grid, config.r, newton);
    summary.values = iterated_at_partition(solution);
    summary.newton_iterations = solution.newton_iterations;
    summary.final_residual_norm = solution.final_residual_norm;
  } else {
    const auto solution = solve_nystrom(problem, grid, newton);
    summary.values = sample_partition<double>(solution, n);
    summary.newton_iterations = solution.newton_iterations;
    summary.final_residual_norm = solution.final_residual_norm;
  }
  summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (problem.exact) {
    Vector<double> errors(summary.values.size());
    for (Eigen::Index i = 0; i < errors.size(); ++i) {
      errors(i) = std::abs((*problem.exact)(summary.values.t(i)) - summary.values.values(i));
    }
    summary.errors = std::move(errors);
  }
  emit(config, render_summary(config, summary), out);
  return kOk;
}

int run_converge(const RunConfig& config, std::ostream& out) {
  const auto problem = make_problem(config.problem);
  StudyOptions options;
  options.r = config.r;
  options.n_list = config.n_list;
  const std::string rule = config.p_rule;
  options.refinement = [rule](int n, int r) { return refinement_for(rule, n, r); };
  options.rho = effective_rho(config);
  options.newton = NewtonOptions{config.tol, config.max_iter};
  const auto report = convergence_study(problem, options);

  std::size_t level = 0;
  if (config.level) {
    level = report.levels.size();
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
      if (report.levels[i].n == *config.level) level = i;
    }
    if (level == report.levels.size()) throw std::invalid_argument("--level must be one of the --n values");
  }
  std::string text;
  switch (config.format) {
    case Format::kCsv: text = report_to_csv(report, level); break;
    case Format::kMarkdown: text = report_to_markdown(report, level); break;
    case Format::kJson: text = report_to_json(report).dump(2) + "\n"; break;
  }
  emit(config, text, out);
  return kOk;
}

int run_problems(std::ostream& out) {
  for (const auto& entry : list_problems()) out << entry.name << "\t" << entry.description << "\n";
  return kOk;
}

}  // namespace

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid n value '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("invalid n value '" + item + "'");
    values.push_back(value);
  }
  if (values.empty()) throw std::invalid_argument("empty n list");
  return values;
}

int refinement_for(const std::string& p_rule, int n, int r) {
  if (p_rule == "pow") return power_refinement(n, r);
  const std::string prefix = "fixed:";
  if (p_rule.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string digits = p_rule.substr(prefix.size());
    int p = 0;
    try {
      p = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size() || p < 1) throw std::invalid_argument("invalid p rule '" + p_rule + "'");
    return p;
  }
  throw std::invalid_argument("invalid p rule '" + p_rule + "' (expected pow or fixed:<p>)");
}

void validate(const RunConfig& config) {
  if (config.subcommand == "problems") return;
  if (config.r < 1 || config.r > 4) throw std::invalid_argument("--r must be in [1, 4]");
  if (config.subcommand == "coeffs") return;
  if (config.method != "galerkin" && config.method != "nystrom") {
    throw std::invalid_argument("--method must be galerkin or nystrom");
  }
  if (config.n_list.empty()) throw std::invalid_argument("--n is required");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (config.n_list[i] < 1) throw std::invalid_argument("--n values must be positive");
    if (i > 0 && config.n_list[i] <= config.n_list[i - 1]) {
      throw std::invalid_argument("--n values must be strictly increasing");
    }
  }
  if (config.subcommand == "solve" && config.n_list.size() != 1) {
    throw std::invalid_argument("solve takes a single --n value");
  }
  for (int n : config.n_list) refinement_for(config.p_rule, n, config.r);
  if (config.rho < 0 || config.rho > 20) throw std::invalid_argument("--rho must be in [1, 20]");
  if (config.method == "galerkin" && config.rho > 0 && 2 * config.rho - 1 < 3 * config.r) {
    throw std::invalid_argument("--rho too small: need 2 rho - 1 >= 3r");
  }
  if (!(config.tol > 0)) throw std::invalid_argument("--tol must be positive");
  if (config.max_iter < 1) throw std::invalid_argument("--max-iter must be >= 1");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Galerkin, iterated Galerkin and Nystrom solvers for Urysohn integral equations"};
  app.require_subcommand(1);

  RunConfig config;
  std::string n_text = "20,40";
  std::string format_text = "md";
  std::string output_path;
  int level = 0;

  auto add_solver_options = [&](CLI::App* sub, const std::string& n_default) {
    sub->add_option("--problem", config.problem, "Registered problem name")->capture_default_str();
    sub->add_option("--r", config.r, "Piecewise polynomial order (degree r-1)")->capture_default_str();
    sub->add_option("--n", n_text, "Coarse subinterval count(s), comma separated")->default_str(n_default);
    sub->add_option("--p-rule", config.p_rule, "Refinement: pow (p = n^r) or fixed:<p>")->capture_default_str();
    sub->add_option("--rho", config.rho, "Gauss points per fine subinterval (0 = minimal)")->capture_default_str();
    sub->add_option("--tol", config.tol, "Newton tolerance on the sup-norm residual")->capture_default_str();
    sub->add_option("--max-iter", config.max_iter, "Newton iteration limit")->capture_default_str();
    sub->add_option("--format", format_text, "csv, md or json")->capture_default_str();
    sub->add_option("--output", output_path, "Write to this file instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "Solve once and tabulate errors at the partition points");
  add_solver_options(solve, "20");
  solve->add_option("--method", config.method, "galerkin (iterated solution) or nystrom")->capture_default_str();

  auto* converge = app.add_subcommand("converge", "Convergence study with Richardson extrapolation");
  add_solver_options(converge, "20,40");
  converge->add_option("--level", level, "Which n of the ladder to tabulate (csv/md)");

  auto* coeffs = app.add_subcommand("coeffs", "Print J_k samples, bbar constants and Bernoulli values");
  coeffs->add_option("--r", config.r, "Order r")->capture_default_str();

  app.add_subcommand("problems", "List the registered problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    if (config.subcommand == "solve" && solve->count("--n") == 0) n_text = "20";
    config.n_list = parse_n_list(n_text);
    config.format = parse_format(format_text);
    if (!output_path.empty()) config.output = output_path;
    if (converge->count("--level") > 0) config.level = level;
    validate(config);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (config.subcommand == "problems") return run_problems(out);
    if (config.subcommand == "coeffs") {
      emit(config, coefficients_report(config.r), out);
      return kOk;
    }
    if (config.subcommand == "solve") return run_solve(config, out);
    return run_converge(config, out);
  } catch (const UnknownProblemError& e) {
    err << "error: " << e.what() << "\n";
    return kUnknownProblem;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const SingularJacobianError& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace urysohn::cli
