#include "urysohn/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "urysohn/poly_basis.hpp"

namespace urysohn {
namespace {

std::string optional_sci(const std::optional<double>& value) { return value ? format_sci(*value) : std::string(); }

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::optional<double> parse_field(const std::string& field) {
  if (field.empty()) return std::nullopt;
  std::size_t used = 0;
  const double value = std::stod(field, &used);
  if (used != field.size()) throw std::invalid_argument("malformed CSV field '" + field + "'");
  return value;
}

nlohmann::json optional_array(const std::vector<std::optional<double>>& values, std::size_t size) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < size; ++i) {
    if (i < values.size() && values[i]) {
      out.push_back(*values[i]);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

nlohmann::json vector_array(const Vector<double>& values) {
  return nlohmann::json(std::vector<double>(values.data(), values.data() + values.size()));
}

const ConvergenceLevel<double>& level_at(const ConvergenceReport<double>& report, std::size_t level) {
  if (level >= report.levels.size()) throw ParameterError("report level out of range");
  return report.levels[level];
}

}  // namespace

std::string format_sci(double value, int significant) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*e", significant - 1, value);
  return buffer;
}

std::string format_compact(double value) {
  std::string text = format_sci(value, 7);
  const auto e = text.find('e');
  std::string exponent = text.substr(e + 1);
  const char sign = exponent[0];
  exponent = exponent.substr(1);
  while (exponent.size() > 1 && exponent[0] == '0') exponent.erase(0, 1);
  return text.substr(0, e + 1) + (sign == '-' ? "-" : "") + exponent;
}

double round_significant(double value, int significant) { return std::strtod(format_sci(value, significant).c_str(), nullptr); }

std::vector<CsvRow> report_rows(const ConvergenceReport<double>& report, std::size_t level) {
  const auto& l = level_at(report, level);
  std::vector<CsvRow> rows(l.iterated.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    row.t = l.iterated.t(i);
    row.eps_s = l.eps_s(i);
    if (i < l.order_s.size()) row.order_s = l.order_s[i];
    if (l.eps_ex) row.eps_ex = (*l.eps_ex)(i);
    if (i < l.order_ex.size()) row.order_ex = l.order_ex[i];
  }
  return rows;
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_sci(row.t) << ',' << format_sci(row.eps_s) << ',' << optional_sci(row.order_s) << ','
        << optional_sci(row.eps_ex) << ',' << optional_sci(row.order_ex) << '\n';
  }
  return out.str();
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) throw std::invalid_argument("expected 5 CSV fields, got " + std::to_string(fields.size()));
    CsvRow row;
    row.t = parse_field(fields[0]).value();
    row.eps_s = parse_field(fields[1]).value();
    row.order_s = parse_field(fields[2]);
    row.eps_ex = parse_field(fields[3]);
    row.order_ex = parse_field(fields[4]);
    rows.push_back(row);
  }
  return rows;
}

std::string report_to_csv(const ConvergenceReport<double>& report, std::size_t level) {
  return rows_to_csv(report_rows(report, level));
}

std::string report_to_markdown(const ConvergenceReport<double>& report, std::size_t level) {
  const auto& l = level_at(report, level);
  std::ostringstream out;
  out << "Problem " << report.problem << ", r = " << report.r << ", rho = " << report.rho << ", n = " << l.n
      << ", m = " << l.m << "\n\n";
  out << "| t | eps_S (n=" << l.n << ") | order_S | eps_EX (n=" << l.n << ") | order_EX |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& row : report_rows(report, level)) {
    out << "| " << fixed(row.t, 4) << " | " << format_sci(row.eps_s, 3) << " | "
        << (row.order_s ? fixed(*row.order_s, 2) : "") << " | "
        << (row.eps_ex ? format_sci(*row.eps_ex, 3) : "") << " | "
        << (row.order_ex ? fixed(*row.order_ex, 2) : "") << " |\n";
  }
  return out.str();
}

nlohmann::json report_to_json(const ConvergenceReport<double>& report) {
  nlohmann::json out;
  out["problem"] = report.problem;
  out["r"] = report.r;
  out["rho"] = report.rho;
  out["levels"] = nlohmann::json::array();
  out["metadata"]["levels"] = nlohmann::json::array();
  for (const auto& l : report.levels) {
    nlohmann::json level;
    level["n"] = l.n;
    level["p"] = l.p;
    level["m"] = l.m;
    level["newton_iterations"] = l.newton_iterations;
    level["final_residual_norm"] = l.final_residual_norm;
    level["t"] = vector_array(l.iterated.t);
    level["z_S"] = vector_array(l.iterated.values);
    level["eps_S"] = vector_array(l.eps_s);
    const auto points = static_cast<std::size_t>(l.iterated.size());
    level["order_S"] = optional_array(l.order_s, points);
    level["z_EX"] = l.extrapolated ? vector_array(l.extrapolated->values) : nlohmann::json(nullptr);
    level["eps_EX"] = l.eps_ex ? vector_array(*l.eps_ex) : nlohmann::json(nullptr);
    level["order_EX"] = optional_array(l.order_ex, points);
    out["levels"].push_back(level);
    out["metadata"]["levels"].push_back({{"n", l.n}, {"seconds", l.seconds}});
  }
  return out;
}

std::string summary_to_csv(const SolveSummary& summary) {
  std::ostringstream out;
  out << "t,z,eps\n";
  for (Eigen::Index i = 0; i < summary.values.size(); ++i) {
    out << format_sci(summary.values.t(i)) << ',' << format_sci(summary.values.values(i)) << ','
        << (summary.errors ? format_sci((*summary.errors)(i)) : std::string()) << '\n';
  }
  return out.str();
}

std::string summary_to_markdown(const SolveSummary& summary) {
  std::ostringstream out;
  out << "Problem " << summary.problem << ", method " << summary.method << ", n = " << summary.n
      << ", p = " << summary.p << ", m = " << summary.n * summary.p << ", rho = " << summary.rho;
  if (summary.method == "galerkin") out << ", r = " << summary.r;
  out << "\n";
  out << "Newton iterations: " << summary.newton_iterations
      << ", final residual: " << format_sci(summary.final_residual_norm, 3) << "\n\n";
  out << "| t | z(t) | eps |\n|---|---|---|\n";
  for (Eigen::Index i = 0; i < summary.values.size(); ++i) {
    out << "| " << fixed(summary.values.t(i), 4) << " | " << format_sci(summary.values.values(i), 9) << " | "
        << (summary.errors ? format_sci((*summary.errors)(i), 3) : std::string()) << " |\n";
  }
  return out.str();
}

nlohmann::json summary_to_json(const SolveSummary& summary) {
  nlohmann::json out;
  out["problem"] = summary.problem;
  out["method"] = summary.method;
  out["n"] = summary.n;
  out["p"] = summary.p;
  out["m"] = summary.n * summary.p;
  out["rho"] = summary.rho;
  if (summary.method == "galerkin") out["r"] = summary.r;
  out["newton_iterations"] = summary.newton_iterations;
  out["final_residual_norm"] = summary.final_residual_norm;
  out["t"] = vector_array(summary.values.t);
  out["z"] = vector_array(summary.values.values);
  out["eps"] = summary.errors ? vector_array(*summary.errors) : nlohmann::json(nullptr);
  out["metadata"]["seconds"] = summary.seconds;
  return out;
}

std::string coefficients_report(int r) {
  if (r < 1 || r > 5) throw ParameterError("coefficients: r must be in [1, 5]");
  std::ostringstream out;
  out << "r = " << r << "\n";
  for (int k = 1; k <= 2 * r + 1; ++k) {
    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      out << "J" << k << "(" << fixed(tau, 2) << ") = " << format_compact(j_k(r, k, tau)) << "\n";
    }
  }
  for (int p = 1; p <= 2 * r; ++p) {
    out << "bbar[" << 2 * r << "," << p << "] = " << format_compact(bbar<double>(r, p)) << "\n";
  }
  out << "J2_integral = " << format_compact(j_square_integral<double>(r)) << "\n";
  for (int k = 0; k <= 2 * r; ++k) {
    for (double s : {0.0, 0.5, 1.0}) {
      out << "B" << k << "(" << fixed(s, 2) << ") = " << format_compact(bernoulli(k, s)) << "\n";
    }
  }
  return out.str();
}

}  // namespace urysohn
