#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace urysohn::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoConvergence = 2,
  kUnknownProblem = 3,
};

enum class Format { kCsv, kMarkdown, kJson };

/// Everything a subcommand needs, validated before any solve.
struct RunConfig {
  std::string subcommand;
  std::string problem = "rpk-aks";
  std::string method = "galerkin";
  int r = 1;
  std::vector<int> n_list{20, 40};
  std::string p_rule = "pow";
  int rho = 0;  ///< 0 = smallest Gauss rule with 2 rho - 1 >= 3r
  double tol = 1e-12;
  int max_iter = 50;
  Format format = Format::kMarkdown;
  std::optional<std::string> output;
  std::optional<int> level;  ///< converge: which n to tabulate (default: first)
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const RunConfig& config);

/// "pow" -> n^r, "fixed:<p>" -> p.
int refinement_for(const std::string& p_rule, int n, int r);

std::vector<int> parse_n_list(const std::string& text);

/// Parses argv and runs the selected subcommand; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace urysohn::cli
