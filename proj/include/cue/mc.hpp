#ifndef CUE_MC_HPP
#define CUE_MC_HPP

// Metropolis sampling of CUE eigenangles and Monte Carlo estimates of the
// second- and third-order form factors from linear statistics.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cue/types.hpp"

namespace cue {

/// N eigenangles, each in [0, 2pi).
struct Spectrum {
  Eigen::VectorXd angles;
};

/// One chain step is a sweep of N single-angle proposals; burn_in and
/// thinning count sweeps.
struct SamplerConfig {
  std::uint64_t seed = 0;
  long n_samples = 10000;  // retained, over all chains
  long burn_in = 2000;
  long thinning = 1;
  double proposal_width = 1.0;  // initial half-width, tuned during burn-in
  int chains = 4;

  /// Throws ConfigError.
  void validate() const;
};

struct McEstimate {
  std::complex<double> value;
  double std_error = 0.0;       // of the real part
  double std_error_imag = 0.0;  // of the imaginary part
  long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Single Metropolis chain on the unnormalised log-JPDF.
class CueSampler {
 public:
  CueSampler(EnsembleSize n, const SamplerConfig& cfg, std::uint64_t stream_seed);

  /// Runs cfg.burn_in sweeps, nudging the proposal width toward 35%
  /// acceptance. Throws DivergenceError if the tuned acceptance is outside
  /// [0.05, 0.95]; a width saturated at pi may exceed 0.95.
  void burn_in();

  /// Advances cfg.thinning sweeps and returns the state.
  const Spectrum& next();

  [[nodiscard]] double proposal_width() const noexcept { return width_; }
  /// Acceptance rate over the sweeps since burn_in() returned.
  [[nodiscard]] double acceptance_rate() const noexcept;
  [[nodiscard]] const Spectrum& state() const noexcept { return state_; }

 private:
  long sweep();  // returns accepted moves

  EnsembleSize n_;
  SamplerConfig cfg_;
  std::mt19937_64 rng_;
  Spectrum state_;
  double width_;
  long proposed_ = 0;
  long accepted_ = 0;
};

/// Retained states of one chain, one column per sample.
struct ChainSamples {
  Eigen::MatrixXd angles;  // N x samples
  double acceptance = 0.0;
  double proposal_width = 0.0;
};

/// cfg.chains independent chains seeded from (seed, index), run in parallel.
/// Sample counts are split as evenly as possible; the result does not
/// depend on the worker count.
std::vector<ChainSamples> sample_chains(EnsembleSize n, const SamplerConfig& cfg);

/// All retained spectra of sample_chains, chain by chain.
std::vector<Spectrum> sample_spectrum(EnsembleSize n, const SamplerConfig& cfg);

/// A_k = sum_j exp(i k theta_j).
std::complex<double> linear_statistic(const Spectrum& s, double k);

/// Adds phi to every angle (canonicalised).
std::vector<ChainSamples> rotate(std::vector<ChainSamples> chains, double phi);

/// <|A_k|^2> - |<A_k>|^2 with the empirical mean; batch-means errors with
/// 32 batches per chain.
McEstimate sff2_from_chains(const std::vector<ChainSamples>& chains, double k,
                            std::uint64_t seed);

/// kappa(A_k, A_b, A_{-k-b}) / 2pi on centred statistics. Integer k, b only
/// (DomainError otherwise).
McEstimate s3_from_chains(const std::vector<ChainSamples>& chains, int k, int b,
                          std::uint64_t seed);

struct MeanCheck {
  std::complex<double> sample_mean;
  std::complex<double> exact_mean;  // N (exp(2 pi i k) - 1) / (2 pi i k), N at k = 0
  double z;                         // |sample - exact| / combined std error
};
MeanCheck check_linear_mean(const std::vector<ChainSamples>& chains, double k);

McEstimate estimate_sff2(EnsembleSize n, double k, const SamplerConfig& cfg);

/// Throws DomainError unless k and b are integers.
McEstimate estimate_s3_int(EnsembleSize n, double k, double b, const SamplerConfig& cfg);

}  // namespace cue

#endif  // CUE_MC_HPP
