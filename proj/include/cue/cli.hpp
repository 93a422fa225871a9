#ifndef CUE_CLI_HPP
#define CUE_CLI_HPP

// The `cue_sff` command line: eval, sweep, verify, mc and fig.
// Exit codes: 0 success, 1 verification or statistical failure,
// 2 argument error, 3 I/O error.

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cue/types.hpp"

namespace cue {

enum class Quantity { Sff2, Sff2Int, AsymRamp, AsymO1, Delta, Sff3Diag, Sff3Kb, Sff3Floor };

/// "sff2", "sff2-int", ...; ConfigError for unknown names.
Quantity parse_quantity(const std::string& name);
std::string quantity_name(Quantity q);
const std::vector<std::string>& quantity_names();

/// One point of a quantity. `x` is k, except t for asym-ramp and tau for delta.
struct PointArgs {
  Quantity quantity;
  EnsembleSize n;
  double x;
  std::optional<int> b;       // sff3-kb
  std::optional<double> x0;   // delta
};

double evaluate(const PointArgs& p);

/// Exact counterpart used by --with-oracle: the elementary sums for sff2,
/// sff2_exact for the asymptotic forms and the staircase, the exact
/// fluctuation for delta, the Fourier-mode sum for third order.
double evaluate_oracle(const PointArgs& p);

struct SweepSpec {
  Quantity quantity = Quantity::Sff2;
  int n = 5;
  double k_min = 0.0;
  double k_max = 1.0;
  int points = 2;
  std::optional<int> b;
  std::optional<double> x0;
  bool with_oracle = false;

  /// Throws ConfigError.
  void validate() const;
};

struct SweepRow {
  double k = 0.0;
  double value = 0.0;
  double oracle = std::numeric_limits<double>::quiet_NaN();
  double abs_err = std::numeric_limits<double>::quiet_NaN();
};

/// k_i = k_min + (k_max - k_min) i / (points - 1), evaluated in parallel,
/// returned in index order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool with_oracle);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows, bool with_oracle);

/// Writes fig1.csv or fig2.csv (`series,k,value`) into dir, creating it if
/// needed. Throws IoError.
std::filesystem::path write_figure(int which, const std::filesystem::path& dir);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cue

#endif  // CUE_CLI_HPP
