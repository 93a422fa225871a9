#ifndef CUE_REPORT_HPP
#define CUE_REPORT_HPP

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

namespace cue {

/// One closed-form vs oracle comparison.
/// Invariant: pass == (abs_err <= tolerance || rel_err <= tolerance).
struct OracleReport {
  std::string query;
  double closed_value = 0.0;
  double oracle_value = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_report(std::string query, double closed_value, double oracle_value,
                         double tolerance);

/// Shortest round-trip decimal (17 significant digits).
std::string format_double(double x);

inline constexpr const char* kReportCsvHeader = "query,closed,oracle,abs_err,rel_err,tol,pass";

std::string to_csv_row(const OracleReport& r);
nlohmann::json to_json(const OracleReport& r);
void write_reports_csv(std::ostream& os, std::span<const OracleReport> rows);

}  // namespace cue

#endif  // CUE_REPORT_HPP
