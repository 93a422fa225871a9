#ifndef CUE_VERIFY_HPP
#define CUE_VERIFY_HPP

// Randomised closed-form vs oracle suites behind `cue_sff verify`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cue/report.hpp"

namespace cue {

struct VerifyOptions {
  std::string suite;
  int n_max = 10;
  int cases = 50;
  double tol = 1e-10;
  std::uint64_t seed = 7;
  std::filesystem::path deviations;  // empty: the compiled-in default
};

/// A published form compared against the oracle hierarchy. Failing rows are
/// tolerated only when `id` is listed in the deviations file.
struct DeviationRow {
  std::string id;
  OracleReport report;
  bool documented = false;
};

struct VerifyResult {
  std::vector<OracleReport> rows;
  std::vector<DeviationRow> deviations;
  int passed = 0;
  int total = 0;  // rows plus undocumented failing deviations

  [[nodiscard]] bool ok() const { return passed == total; }
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite or non-positive counts.
///
/// The asymptotics suite compares against the expansions' own error orders
/// (1/N^2 for the ramp and k = O(1) forms, 100/N^4 for the fluctuation) or
/// `tol`, whichever is larger. The mc suite uses 4 standard errors.
VerifyResult run_suite(const VerifyOptions& opts);

/// Report rows as CSV, deviation rows, then `PASS m/n` or `FAIL m/n`.
void print_result(std::ostream& os, const VerifyResult& r);

}  // namespace cue

#endif  // CUE_VERIFY_HPP
