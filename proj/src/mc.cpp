#include "cue/mc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "cue/kernel.hpp"
#include "cue/parallel.hpp"
#include "cue/specfun.hpp"

namespace cue {
namespace {

constexpr double kTargetAcceptance = 0.35;
constexpr long kTuningBlock = 20;
constexpr double kMinWidth = 1e-4;
constexpr int kBatchesPerChain = 32;

// Standard error of the overall mean by batch means. `series` holds one
// row per chain; each chain is cut into kBatchesPerChain contiguous batches.
double batch_means_error(const std::vector<Eigen::VectorXd>& series) {
  std::vector<double> means;
  for (const auto& y : series) {
    const Eigen::Index m = y.size();
    const Eigen::Index batches = std::min<Eigen::Index>(kBatchesPerChain, m);
    Eigen::Index start = 0;
    for (Eigen::Index b = 0; b < batches; ++b) {
      const Eigen::Index len = m / batches + (b < m % batches ? 1 : 0);
      means.push_back(y.segment(start, len).mean());
      start += len;
    }
  }
  const auto count = static_cast<double>(means.size());
  if (means.size() < 2) return 0.0;
  const Eigen::Map<const Eigen::VectorXd> v(means.data(), static_cast<Eigen::Index>(means.size()));
  const double centre = v.mean();
  const double ss = (v.array() - centre).square().sum();
  return std::sqrt(ss / (count * (count - 1.0)));
}

long total_samples(const std::vector<ChainSamples>& chains) {
  long n = 0;
  for (const auto& c : chains) n += c.angles.cols();
  return n;
}

// A_k for every retained sample of one chain.
Eigen::VectorXcd chain_statistic(const ChainSamples& c, double k) {
  const std::complex<double> ik(0.0, k);
  return (ik * c.angles.cast<std::complex<double>>()).array().exp().colwise().sum().transpose();
}

std::complex<double> pooled_mean(const std::vector<Eigen::VectorXcd>& stats, long n) {
  std::complex<double> acc = 0.0;
  for (const auto& s : stats) acc += s.sum();
  return acc / static_cast<double>(n);
}

McEstimate summarise(const std::vector<Eigen::VectorXcd>& terms, long n, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> re, im;
  std::complex<double> acc = 0.0;
  for (const auto& t : terms) {
    acc += t.sum();
    re.emplace_back(t.real());
    im.emplace_back(t.imag());
  }
  McEstimate e;
  e.value = acc / static_cast<double>(n);
  e.std_error = batch_means_error(re);
  e.std_error_imag = batch_means_error(im);
  e.n_samples = n;
  e.seed = seed;
  return e;
}

}  // namespace

void SamplerConfig::validate() const {
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (thinning < 1) throw ConfigError("thinning must be >= 1");
  if (!(proposal_width > 0.0 && proposal_width <= kPi))
    throw ConfigError("proposal_width must lie in (0, pi]");
  if (chains < 1) throw ConfigError("chains must be >= 1");
}

CueSampler::CueSampler(EnsembleSize n, const SamplerConfig& cfg, std::uint64_t stream_seed)
    : n_(n), cfg_(cfg), rng_(stream_seed), width_(cfg.proposal_width) {
  cfg_.validate();
  // Jittered equal spacing: a typical, well-separated configuration.
  std::uniform_real_distribution<double> jitter(0.0, kTwoPi / n.real());
  state_.angles.resize(n.value());
  for (int j = 0; j < n.value(); ++j)
    state_.angles(j) = canonical_angle(kTwoPi * j / n.real() + jitter(rng_));
}

long CueSampler::sweep() {
  std::uniform_real_distribution<double> step(-width_, width_);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n_.value() - 1);
  const std::span<const double> view(state_.angles.data(), state_.angles.size());
  long accepted = 0;
  for (int s = 0; s < n_.value(); ++s) {
    const auto j = static_cast<std::size_t>(pick(rng_));
    const double proposed = canonical_angle(state_.angles(j) + step(rng_));
    const double d = log_jpdf_delta(view, j, proposed);
    if (d >= 0.0 || unit(rng_) < std::exp(d)) {
      state_.angles(j) = proposed;
      ++accepted;
    }
  }
  return accepted;
}

void CueSampler::burn_in() {
  const long tuning = cfg_.burn_in - cfg_.burn_in / 4;
  for (long done = 0; done < tuning; done += kTuningBlock) {
    long acc = 0;
    const long block = std::min(kTuningBlock, tuning - done);
    for (long s = 0; s < block; ++s) acc += sweep();
    const double rate = static_cast<double>(acc) / static_cast<double>(block * n_.value());
    width_ = std::clamp(width_ * std::exp(2.0 * (rate - kTargetAcceptance)), kMinWidth, kPi);
  }
  // Frozen width for the last quarter: this is the post-tuning acceptance.
  const long frozen = cfg_.burn_in - tuning;
  long acc = 0;
  for (long s = 0; s < frozen; ++s) acc += sweep();
  if (frozen > 0) {
    const double rate = static_cast<double>(acc) / static_cast<double>(frozen * n_.value());
    const bool saturated = width_ >= kPi;
    if (rate < 0.05 || (rate > 0.95 && !saturated))
      throw DivergenceError("sampler acceptance " + std::to_string(rate) +
                            " outside [0.05, 0.95] after tuning");
  }
  proposed_ = 0;
  accepted_ = 0;
}

const Spectrum& CueSampler::next() {
  for (long s = 0; s < cfg_.thinning; ++s) {
    accepted_ += sweep();
    proposed_ += n_.value();
  }
  return state_;
}

double CueSampler::acceptance_rate() const noexcept {
  return proposed_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(proposed_);
}

namespace {

// Mixes (seed, index) so distinct seeds never share a chain stream.
std::uint64_t chain_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::vector<ChainSamples> sample_chains(EnsembleSize n, const SamplerConfig& cfg) {
  cfg.validate();
  const auto chains = static_cast<std::size_t>(cfg.chains);
  return parallel_map(chains, [&](std::size_t i) {
    const long share = cfg.n_samples / cfg.chains +
                       (static_cast<long>(i) < cfg.n_samples % cfg.chains ? 1 : 0);
    CueSampler sampler(n, cfg, chain_seed(cfg.seed, i));
    sampler.burn_in();
    ChainSamples out;
    out.angles.resize(n.value(), share);
    for (long s = 0; s < share; ++s) out.angles.col(s) = sampler.next().angles;
    out.acceptance = sampler.acceptance_rate();
    out.proposal_width = sampler.proposal_width();
    return out;
  });
}

std::vector<Spectrum> sample_spectrum(EnsembleSize n, const SamplerConfig& cfg) {
  std::vector<Spectrum> out;
  for (const auto& c : sample_chains(n, cfg))
    for (Eigen::Index s = 0; s < c.angles.cols(); ++s) out.push_back({c.angles.col(s)});
  return out;
}

std::complex<double> linear_statistic(const Spectrum& s, double k) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index j = 0; j < s.angles.size(); ++j) acc += std::polar(1.0, k * s.angles(j));
  return acc;
}

std::vector<ChainSamples> rotate(std::vector<ChainSamples> chains, double phi) {
  for (auto& c : chains) c.angles = c.angles.unaryExpr([phi](double t) { return canonical_angle(t + phi); });
  return chains;
}

McEstimate sff2_from_chains(const std::vector<ChainSamples>& chains, double k,
                            std::uint64_t seed) {
  const long n = total_samples(chains);
  std::vector<Eigen::VectorXcd> stats;
  for (const auto& c : chains) stats.push_back(chain_statistic(c, k));
  const std::complex<double> mean = pooled_mean(stats, n);
  const double bessel = n > 1 ? static_cast<double>(n) / static_cast<double>(n - 1) : 1.0;
  std::vector<Eigen::VectorXcd> terms;
  for (const auto& s : stats)
    terms.emplace_back(((s.array() - mean).abs2() * bessel).cast<std::complex<double>>());
  McEstimate e = summarise(terms, n, seed);
  e.value = e.value.real();
  e.std_error_imag = 0.0;
  return e;
}

McEstimate s3_from_chains(const std::vector<ChainSamples>& chains, int k, int b,
                          std::uint64_t seed) {
  const long n = total_samples(chains);
  std::vector<Eigen::VectorXcd> x, y, z;
  for (const auto& c : chains) {
    x.push_back(chain_statistic(c, k));
    y.push_back(chain_statistic(c, b));
    z.push_back(chain_statistic(c, -k - b));
  }
  const auto mx = pooled_mean(x, n), my = pooled_mean(y, n), mz = pooled_mean(z, n);
  // With empirical means the joint cumulant is the mean of the centred product.
  std::vector<Eigen::VectorXcd> terms;
  for (std::size_t c = 0; c < chains.size(); ++c)
    terms.emplace_back((x[c].array() - mx) * (y[c].array() - my) * (z[c].array() - mz) / kTwoPi);
  return summarise(terms, n, seed);
}

MeanCheck check_linear_mean(const std::vector<ChainSamples>& chains, double k) {
  const long n = total_samples(chains);
  const int big_n = chains.empty() ? 0 : static_cast<int>(chains.front().angles.rows());
  std::vector<Eigen::VectorXcd> stats;
  for (const auto& c : chains) stats.push_back(chain_statistic(c, k));
  const McEstimate e = summarise(stats, n, 0);
  MeanCheck m;
  m.sample_mean = e.value;
  if (k == 0.0) {
    m.exact_mean = static_cast<double>(big_n);
  } else {
    const std::complex<double> rise(cos_pi(2.0 * k) - 1.0, sin_pi(2.0 * k));
    m.exact_mean = static_cast<double>(big_n) * rise / std::complex<double>(0.0, kTwoPi * k);
  }
  const double se = std::hypot(e.std_error, e.std_error_imag);
  const double gap = std::abs(m.sample_mean - m.exact_mean);
  m.z = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return m;
}

McEstimate estimate_sff2(EnsembleSize n, double k, const SamplerConfig& cfg) {
  return sff2_from_chains(sample_chains(n, cfg), k, cfg.seed);
}

McEstimate estimate_s3_int(EnsembleSize n, double k, double b, const SamplerConfig& cfg) {
  if (!is_integer(k) || !is_integer(b))
    throw DomainError("estimate_s3_int: integer frequencies required");
  return s3_from_chains(sample_chains(n, cfg), static_cast<int>(k), static_cast<int>(b), cfg.seed);
}

}  // namespace cue
