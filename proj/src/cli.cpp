#include "cue/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>

#include "cue/errors.hpp"
#include "cue/mc.hpp"
#include "cue/oracles.hpp"
#include "cue/parallel.hpp"
#include "cue/report.hpp"
#include "cue/sff2.hpp"
#include "cue/sff3.hpp"
#include "cue/verify.hpp"

namespace cue {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct NamedQuantity {
  const char* name;
  Quantity q;
};

constexpr NamedQuantity kQuantities[] = {
    {"sff2", Quantity::Sff2},           {"sff2-int", Quantity::Sff2Int},
    {"asym-ramp", Quantity::AsymRamp},  {"asym-o1", Quantity::AsymO1},
    {"delta", Quantity::Delta},         {"sff3-diag", Quantity::Sff3Diag},
    {"sff3-kb", Quantity::Sff3Kb},      {"sff3-floor", Quantity::Sff3Floor}};

int require_b(const PointArgs& p) {
  if (!p.b) throw ConfigError("sff3-kb needs --b");
  return *p.b;
}

double require_x0(const PointArgs& p) {
  if (!p.x0) throw ConfigError("delta needs --x0");
  return *p.x0;
}

int floor_frequency(double k) { return static_cast<int>(std::floor(k)); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

// Grid point i of points on [lo, hi]; endpoints exact.
double grid_point(double lo, double hi, int i, int points) {
  if (i == points - 1) return hi;
  return lo + ((hi - lo) * i) / (points - 1);
}

}  // namespace

Quantity parse_quantity(const std::string& name) {
  for (const auto& nq : kQuantities)
    if (name == nq.name) return nq.q;
  throw ConfigError("unknown quantity '" + name + "'");
}

std::string quantity_name(Quantity q) {
  for (const auto& nq : kQuantities)
    if (nq.q == q) return nq.name;
  return "?";
}

const std::vector<std::string>& quantity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& nq : kQuantities) v.emplace_back(nq.name);
    return v;
  }();
  return names;
}

double evaluate(const PointArgs& p) {
  switch (p.quantity) {
    case Quantity::Sff2: return sff2_exact(p.n, p.x);
    case Quantity::Sff2Int: return sff2_staircase(p.n, p.x);
    case Quantity::AsymRamp: return asym_ramp(p.n, p.x);
    case Quantity::AsymO1: return asym_order1(p.n, p.x);
    case Quantity::Delta: return delta_fluctuation({p.n, require_x0(p), p.x});
    case Quantity::Sff3Diag: return re_s3_diag(p.n, p.x);
    case Quantity::Sff3Kb: return re_s3_kb(p.n, p.x, require_b(p));
    case Quantity::Sff3Floor: return re_s3_kb(p.n, p.x, floor_frequency(p.x));
  }
  throw ConfigError("unhandled quantity");
}

double evaluate_oracle(const PointArgs& p) {
  switch (p.quantity) {
    case Quantity::Sff2: return sff2_sum(p.n, p.x);
    case Quantity::Sff2Int: return sff2_exact(p.n, p.x);
    case Quantity::AsymRamp: return sff2_exact(p.n, p.x * p.n.real());
    case Quantity::AsymO1: return sff2_exact(p.n, p.x);
    case Quantity::Delta: return fluctuation_exact({p.n, require_x0(p), p.x});
    case Quantity::Sff3Diag: return s3_fourier_sum(p.n, p.x, -p.x).real();
    case Quantity::Sff3Kb: return s3_fourier_sum(p.n, p.x, require_b(p)).real();
    case Quantity::Sff3Floor: return s3_fourier_sum(p.n, p.x, floor_frequency(p.x)).real();
  }
  throw ConfigError("unhandled quantity");
}

void SweepSpec::validate() const {
  if (n < 1) throw ConfigError("--n must be >= 1");
  if (!(k_min < k_max)) throw ConfigError("need k_min < k_max");
  if (points < 2) throw ConfigError("--points must be >= 2");
  if (quantity == Quantity::Sff3Kb && !b) throw ConfigError("sff3-kb needs --b");
  if (b && *b < 0) throw ConfigError("--b must be >= 0");
  if (quantity == Quantity::Delta && !x0) throw ConfigError("delta needs --x0");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const EnsembleSize n(spec.n);
  return parallel_map(static_cast<std::size_t>(spec.points), [&](std::size_t i) {
    const double k = grid_point(spec.k_min, spec.k_max, static_cast<int>(i), spec.points);
    const PointArgs p{spec.quantity, n, k, spec.b, spec.x0};
    SweepRow row;
    row.k = k;
    row.value = evaluate(p);
    if (spec.with_oracle) {
      row.oracle = evaluate_oracle(p);
      row.abs_err = std::fabs(row.value - row.oracle);
    }
    return row;
  });
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool with_oracle) {
  os << (with_oracle ? "k,value,oracle,abs_err" : "k,value") << '\n';
  for (const auto& r : rows) {
    os << format_double(r.k) << ',' << format_double(r.value);
    if (with_oracle) os << ',' << format_double(r.oracle) << ',' << format_double(r.abs_err);
    os << '\n';
  }
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows, bool with_oracle) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json rec = {{"k", r.k}, {"value", r.value}};
    if (with_oracle) {
      rec["oracle"] = r.oracle;
      rec["abs_err"] = r.abs_err;
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

std::filesystem::path write_figure(int which, const std::filesystem::path& dir) {
  if (which != 1 && which != 2) throw ConfigError("--which must be 1 or 2");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  SweepSpec spec;
  spec.quantity = which == 1 ? Quantity::Sff2 : Quantity::Sff3Floor;
  spec.n = 5;
  spec.k_min = 0.0;
  spec.k_max = 10.0;
  spec.points = 2001;
  const auto rows = run_sweep(spec);

  const auto path = dir / (which == 1 ? "fig1.csv" : "fig2.csv");
  auto os = open_output(path);
  const char* series = which == 1 ? "exact" : "sff3-floor";
  os << "series,k,value\n";
  for (const auto& r : rows) os << series << ',' << format_double(r.k) << ',' << format_double(r.value) << '\n';
  if (which == 1) {
    const EnsembleSize n(5);
    for (int k = 0; k <= 10; ++k)
      os << "staircase," << k << ',' << format_double(sff2_staircase(n, k)) << '\n';
  }
  if (!os.flush()) throw IoError("write failed for " + path.string());
  return path;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic spectral form factors of the circular unitary ensemble"};
  app.require_subcommand(1);

  std::string quantity;
  int n = 0;
  double k = 0.0;
  std::optional<int> b;
  std::optional<double> x0;
  bool json = false;

  auto* eval = app.add_subcommand("eval", "Evaluate one quantity at one point");
  eval->add_option("--quantity", quantity, "Quantity")->required()->check(CLI::IsMember(quantity_names()));
  eval->add_option("--n", n, "Ensemble size N")->required()->check(CLI::PositiveNumber);
  eval->add_option("--k", k, "Frequency (t for asym-ramp)");
  std::optional<double> tau;
  eval->add_option("--tau", tau, "Shift tau for delta");
  eval->add_option("--b", b, "Second integer frequency for sff3-kb")->check(CLI::NonNegativeNumber);
  eval->add_option("--x0", x0, "Rescaled point x0 for delta");
  eval->add_flag("--json", json, "JSON output");

  SweepSpec spec;
  std::string format = "csv";
  std::string out_path;
  std::optional<double> tau_min, tau_max;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a quantity on a uniform grid");
  sweep->add_option("--quantity", quantity, "Quantity")->required()->check(CLI::IsMember(quantity_names()));
  sweep->add_option("--n", spec.n, "Ensemble size N")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--k-min", spec.k_min, "Grid start");
  sweep->add_option("--k-max", spec.k_max, "Grid end");
  sweep->add_option("--tau-min", tau_min, "Grid start for delta");
  sweep->add_option("--tau-max", tau_max, "Grid end for delta");
  sweep->add_option("--points", spec.points, "Number of grid points (>= 2)")->required();
  sweep->add_option("--b", spec.b, "Second integer frequency for sff3-kb")->check(CLI::NonNegativeNumber);
  sweep->add_option("--x0", spec.x0, "Rescaled point x0 for delta");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", out_path, "Output file (default: standard output)");
  sweep->add_flag("--with-oracle", spec.with_oracle, "Add oracle and abs_err columns");

  VerifyOptions vopts;
  std::string deviations_path;
  auto* verify = app.add_subcommand("verify", "Run a closed-form vs oracle suite");
  verify->add_option("--suite", vopts.suite, "Suite")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n-max", vopts.n_max, "Largest N drawn");
  verify->add_option("--cases", vopts.cases, "Number of random cases");
  verify->add_option("--tol", vopts.tol, "Tolerance (absolute or relative)");
  verify->add_option("--seed", vopts.seed, "Seed");
  verify->add_option("--deviations", deviations_path, "Deviations file");

  std::string mc_quantity = "sff2";
  SamplerConfig cfg;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate against the closed form");
  mc->add_option("--quantity", mc_quantity, "sff2 or sff3")->check(CLI::IsMember({"sff2", "sff3"}));
  mc->add_option("--n", n, "Ensemble size N")->required()->check(CLI::PositiveNumber);
  mc->add_option("--k", k, "Frequency")->required();
  mc->add_option("--b", b, "Second integer frequency for sff3")->check(CLI::NonNegativeNumber);
  mc->add_option("--samples", cfg.n_samples, "Retained samples");
  mc->add_option("--burn-in", cfg.burn_in, "Burn-in sweeps per chain");
  mc->add_option("--thin", cfg.thinning, "Sweeps between retained samples");
  mc->add_option("--seed", cfg.seed, "Seed");
  mc->add_option("--chains", cfg.chains, "Independent chains");
  mc->add_flag("--json", json, "JSON output");

  int which = 1;
  std::string fig_dir = ".";
  auto* fig = app.add_subcommand("fig", "Write figure data");
  fig->add_option("--which", which, "1 or 2")->check(CLI::IsMember({1, 2}));
  fig->add_option("--out", fig_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      const Quantity q = parse_quantity(quantity);
      double x = k;
      if (q == Quantity::Delta) {
        if (!tau) throw ConfigError("delta needs --tau");
        x = *tau;
      }
      const double v = evaluate({q, EnsembleSize(n), x, b, x0});
      if (json) {
        nlohmann::json rec = {{"quantity", quantity}, {"n", n}, {"k", x}, {"value", v}};
        if (b) rec["b"] = *b;
        if (x0) rec["x0"] = *x0;
        out << rec.dump() << '\n';
      } else {
        out << format_double(v) << '\n';
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      spec.quantity = parse_quantity(quantity);
      if (spec.quantity == Quantity::Delta) {
        if (tau_min) spec.k_min = *tau_min;
        if (tau_max) spec.k_max = *tau_max;
      }
      const auto rows = run_sweep(spec);
      auto emit = [&](std::ostream& os) {
        if (format == "json")
          os << sweep_json(rows, spec.with_oracle).dump(1) << '\n';
        else
          write_sweep_csv(os, rows, spec.with_oracle);
      };
      if (out_path.empty()) {
        emit(out);
      } else {
        auto os = open_output(out_path);
        emit(os);
        if (!os.flush()) throw IoError("write failed for " + out_path);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      vopts.deviations = deviations_path;
      const VerifyResult r = run_suite(vopts);
      print_result(out, r);
      return r.ok() ? kExitOk : kExitFailure;
    }

    if (mc->parsed()) {
      const EnsembleSize en(n);
      McEstimate e;
      double reference;
      if (mc_quantity == "sff2") {
        e = estimate_sff2(en, k, cfg);
        reference = sff2_exact(en, k);
      } else {
        if (!b) throw ConfigError("sff3 needs --b");
        e = estimate_s3_int(en, k, *b, cfg);
        reference = re_s3_kb(en, k, *b);
      }
      const double gap = e.value.real() - reference;
      const double z = e.std_error > 0.0 ? gap / e.std_error
                       : gap == 0.0      ? 0.0
                                         : std::copysign(std::numeric_limits<double>::infinity(), gap);
      if (json) {
        nlohmann::json rec = {{"value", e.value.real()},   {"std_error", e.std_error},
                              {"n_samples", e.n_samples},  {"seed", e.seed},
                              {"reference", reference},    {"z", z}};
        if (mc_quantity == "sff3") {
          rec["value_imag"] = e.value.imag();
          rec["std_error_imag"] = e.std_error_imag;
        }
        out << rec.dump() << '\n';
      } else {
        out << "estimate " << format_double(e.value.real()) << " +- " << format_double(e.std_error)
            << '\n'
            << "reference " << format_double(reference) << '\n'
            << "z " << format_double(z) << '\n';
      }
      return std::fabs(z) <= 4.0 ? kExitOk : kExitFailure;
    }

    if (fig->parsed()) {
      out << write_figure(which, fig_dir).string() << '\n';
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {  // ConfigError, DimensionError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {  // DomainError, PoleError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace cue
