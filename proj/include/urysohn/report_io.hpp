#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "urysohn/extrapolation.hpp"
#include "urysohn/galerkin.hpp"
#include "urysohn/nystrom.hpp"

namespace urysohn {

/// Scientific notation with `significant` significant digits, e.g. 8.60000000e-03.
std::string format_sci(double value, int significant = 9);

/// Seven significant digits with a minimal exponent, e.g. -8.333333e-2.
std::string format_compact(double value);

/// Rounds to what format_sci(value, 9) would print.
double round_significant(double value, int significant = 9);

/// One line of the convergence CSV.
struct CsvRow {
  double t = 0;
  double eps_s = 0;
  std::optional<double> order_s;
  std::optional<double> eps_ex;
  std::optional<double> order_ex;
};

inline constexpr const char* kCsvHeader = "t,eps_S,order_S,eps_EX,order_EX";

/// Rows for one ladder level; absent values stay empty.
std::vector<CsvRow> report_rows(const ConvergenceReport<double>& report, std::size_t level);

std::string rows_to_csv(const std::vector<CsvRow>& rows);
std::vector<CsvRow> parse_csv(const std::string& text);

std::string report_to_csv(const ConvergenceReport<double>& report, std::size_t level);
std::string report_to_markdown(const ConvergenceReport<double>& report, std::size_t level);
/// Full report; wall-clock timings live under "metadata" only.
nlohmann::json report_to_json(const ConvergenceReport<double>& report);

/// Solution values and errors at the partition points of a single solve.
struct SolveSummary {
  std::string problem;
  std::string method;
  int n = 0;
  int p = 0;
  int rho = 0;
  int r = 0;
  int newton_iterations = 0;
  double final_residual_norm = 0;
  double seconds = 0;
  PointValues<double> values;
  std::optional<Vector<double>> errors;
};

std::string summary_to_csv(const SolveSummary& summary);
std::string summary_to_markdown(const SolveSummary& summary);
nlohmann::json summary_to_json(const SolveSummary& summary);

/// Sampled J_k, bbar, int J_r^2 and Bernoulli values for one r.
std::string coefficients_report(int r);

}  // namespace urysohn
