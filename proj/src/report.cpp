#include "cue/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cue {

OracleReport make_report(std::string query, double closed_value, double oracle_value,
                         double tolerance) {
  OracleReport r;
  r.query = std::move(query);
  r.closed_value = closed_value;
  r.oracle_value = oracle_value;
  r.abs_err = std::fabs(closed_value - oracle_value);
  const double scale = std::fabs(oracle_value);
  r.rel_err = scale > 0.0 ? r.abs_err / scale : (r.abs_err == 0.0 ? 0.0 : INFINITY);
  r.tolerance = tolerance;
  r.pass = r.abs_err <= tolerance || r.rel_err <= tolerance;
  return r;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv_row(const OracleReport& r) {
  std::string q = r.query;
  // queries contain commas ("N=5,k=0.5"); quote them
  std::string quoted = "\"";
  for (char c : q) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted + "," + format_double(r.closed_value) + "," + format_double(r.oracle_value) + "," +
         format_double(r.abs_err) + "," + format_double(r.rel_err) + "," +
         format_double(r.tolerance) + "," + (r.pass ? "true" : "false");
}

nlohmann::json to_json(const OracleReport& r) {
  return {{"query", r.query},         {"closed", r.closed_value}, {"oracle", r.oracle_value},
          {"abs_err", r.abs_err},     {"rel_err", r.rel_err},     {"tol", r.tolerance},
          {"pass", r.pass}};
}

void write_reports_csv(std::ostream& os, std::span<const OracleReport> rows) {
  os << kReportCsvHeader << '\n';
  for (const auto& r : rows) os << to_csv_row(r) << '\n';
}

}  // namespace cue
