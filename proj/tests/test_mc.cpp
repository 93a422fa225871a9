#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdlib>

#include "cue/kernel.hpp"
#include "cue/mc.hpp"
#include "cue/quadrature.hpp"
#include "cue/sff2.hpp"
#include "cue/sff3.hpp"

using namespace cue;

namespace {

SamplerConfig config(std::uint64_t seed, long samples) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = samples;
  cfg.burn_in = 1000;
  return cfg;
}

double z_score(const McEstimate& e, double exact) {
  return (e.value.real() - exact) / e.std_error;
}

}  // namespace

TEST_CASE("linear statistic") {
  Spectrum s{Eigen::Vector3d(0.3, 1.1, 5.0)};
  CHECK(linear_statistic(s, 0.0) == std::complex<double>(3.0, 0.0));
  Spectrum pair{Eigen::Vector2d(0.0, kPi)};
  CHECK(std::abs(linear_statistic(pair, 1.0)) < 1e-15);
  Spectrum roots{Eigen::Vector3d(0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0)};
  CHECK(std::abs(linear_statistic(roots, 3.0) - 3.0) < 1e-14);
}

TEST_CASE("config validation") {
  SamplerConfig cfg;
  cfg.thinning = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SamplerConfig{};
  cfg.proposal_width = 4.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SamplerConfig{};
  cfg.n_samples = 0;
  CHECK_THROWS_AS(sample_chains(EnsembleSize(3), cfg), ConfigError);
  cfg = SamplerConfig{};
  cfg.chains = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("spectra are canonical") {
  const auto spectra = sample_spectrum(EnsembleSize(4), config(1, 400));
  CHECK(spectra.size() == 400);
  for (const auto& s : spectra) {
    CHECK(s.angles.size() == 4);
    CHECK(s.angles.minCoeff() >= 0.0);
    CHECK(s.angles.maxCoeff() < kTwoPi);
  }
}

TEST_CASE("N = 1 is uniform: Kolmogorov-Smirnov") {
  const auto spectra = sample_spectrum(EnsembleSize(1), config(4, 10000));
  std::vector<double> x;
  for (const auto& s : spectra) x.push_back(s.angles(0) / kTwoPi);
  std::sort(x.begin(), x.end());
  double d = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    d = std::max({d, (i + 1) / n - x[i], x[i] - i / n});
  CHECK(d < 1.63 / std::sqrt(n));  // 1% critical value
}

TEST_CASE("N = 5 one-point density is flat: chi-square") {
  SamplerConfig cfg = config(5, 20000);
  cfg.thinning = 5;
  const auto spectra = sample_spectrum(EnsembleSize(5), cfg);
  constexpr int bins = 20;
  std::array<double, bins> count{};
  double total = 0.0;
  for (const auto& s : spectra)
    for (Eigen::Index j = 0; j < s.angles.size(); ++j) {
      count[static_cast<int>(s.angles(j) / kTwoPi * bins)] += 1.0;
      total += 1.0;
    }
  CHECK(total == 100000.0);
  double chi2 = 0.0;
  const double expected = total / bins;
  for (double c : count) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 36.19);  // 1% critical value, 19 degrees of freedom
}

TEST_CASE("N = 2 chord length against quadrature of the joint density") {
  // E|e^{ia} - e^{ib}|^2 under the normalised N = 2 density, by 2D quadrature
  const auto rule = composite_gauss_legendre<double>(0.0, kTwoPi, 4, 16);
  double z = 0.0, m = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i)
    for (Eigen::Index j = 0; j < rule.size(); ++j) {
      const double angles[] = {rule.nodes(i), rule.nodes(j)};
      const double w = rule.weights(i) * rule.weights(j) *
                       std::exp(log_jpdf_unnormalized(EnsembleSize(2), angles));
      const double chord = 2.0 - 2.0 * std::cos(rule.nodes(i) - rule.nodes(j));
      z += w;
      m += w * chord;
    }
  const double exact = m / z;
  CHECK(exact == doctest::Approx(3.0).epsilon(1e-12));

  // |e^{ia} - e^{ib}|^2 = 4 - |A_1|^2 and <A_1> = 0
  const McEstimate e = estimate_sff2(EnsembleSize(2), 1.0, config(6, 50000));
  CHECK(std::fabs(4.0 - e.value.real() - exact) <= 4.0 * e.std_error);
}

TEST_CASE("acceptance after tuning") {
  for (int n : {5, 10, 20}) {
    const auto chains = sample_chains(EnsembleSize(n), config(9, 2000));
    for (const auto& c : chains) {
      CHECK(c.acceptance >= 0.2);
      CHECK(c.acceptance <= 0.6);
    }
  }
  const auto flat = sample_chains(EnsembleSize(1), config(9, 100));
  CHECK(flat[0].acceptance == 1.0);
  CHECK(flat[0].proposal_width == kPi);
}

TEST_CASE("acceptance outside the window is a divergence") {
  SamplerConfig cfg = config(1, 10);
  cfg.proposal_width = 1e-4;
  cfg.burn_in = 4;
  CueSampler s(EnsembleSize(5), cfg, 1);
  CHECK_THROWS_AS(s.burn_in(), DivergenceError);
}

TEST_CASE("second-order estimates") {
  const EnsembleSize n(5);
  const McEstimate zero = estimate_sff2(n, 0.0, config(1, 2000));
  CHECK(zero.value.real() == 0.0);
  CHECK(zero.std_error == 0.0);

  const McEstimate three = estimate_sff2(n, 3.0, config(2, 100000));
  CHECK(std::fabs(z_score(three, 3.0)) <= 4.0);
  CHECK(three.n_samples == 100000);
  CHECK(three.seed == 2);

  const McEstimate half = estimate_sff2(n, 0.5, config(3, 100000));
  CHECK(std::fabs(z_score(half, sff2_exact(n, 0.5))) <= 4.0);
}

TEST_CASE("sample mean of the linear statistic") {
  const auto chains = sample_chains(EnsembleSize(5), config(12, 40000));
  for (double k : {0.0, 0.5, 2.0, 2.5}) {
    const MeanCheck m = check_linear_mean(chains, k);
    CHECK(m.z <= 4.0);
  }
  CHECK(check_linear_mean(chains, 0.0).exact_mean == std::complex<double>(5.0, 0.0));
  const MeanCheck half = check_linear_mean(chains, 0.5);
  CHECK(std::abs(half.exact_mean - std::complex<double>(0.0, 10.0 / kPi)) < 1e-12);
}

TEST_CASE("third-order estimates at integer frequencies") {
  const EnsembleSize n(5);
  const McEstimate zero = estimate_s3_int(n, 0.0, 3.0, config(1, 2000));
  CHECK(zero.value == std::complex<double>(0.0, 0.0));

  const McEstimate e21 = estimate_s3_int(n, 2.0, 1.0, config(4, 200000));
  CHECK(std::fabs(e21.value.real()) <= 4.0 * e21.std_error);
  CHECK(std::fabs(e21.value.imag()) <= 4.0 * e21.std_error_imag);

  const McEstimate e33 = estimate_s3_int(n, 3.0, 3.0, config(5, 300000));
  CHECK(std::fabs(z_score(e33, re_s3_kb(n, 3.0, 3))) <= 4.0);

  CHECK_THROWS_AS(estimate_s3_int(n, 0.5, 1.0, config(1, 100)), DomainError);
  CHECK_THROWS_AS(estimate_s3_int(n, 1.0, 1.5, config(1, 100)), DomainError);
}

TEST_CASE("estimators are rotation invariant") {
  const auto chains = sample_chains(EnsembleSize(5), config(13, 20000));
  const auto turned = rotate(chains, 1.234);

  const McEstimate a = sff2_from_chains(chains, 3.0, 13);
  const McEstimate b = sff2_from_chains(turned, 3.0, 13);
  CHECK(b.value.real() == doctest::Approx(a.value.real()).epsilon(1e-10));

  const McEstimate c = s3_from_chains(chains, 2, 2, 13);
  const McEstimate d = s3_from_chains(turned, 2, 2, 13);
  CHECK(std::abs(c.value - d.value) < 1e-10);

  // Non-integer k: wrapping changes individual terms, not the law.
  const McEstimate p = sff2_from_chains(chains, 2.5, 13);
  const McEstimate q = sff2_from_chains(turned, 2.5, 13);
  CHECK(std::fabs(p.value.real() - q.value.real()) <= 4.0 * std::hypot(p.std_error, q.std_error));
}

TEST_CASE("deterministic for a seed, independent of worker count") {
  const McEstimate a = estimate_sff2(EnsembleSize(4), 1.5, config(77, 8000));
  const McEstimate b = estimate_sff2(EnsembleSize(4), 1.5, config(77, 8000));
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  setenv("CUE_SFF_THREADS", "1", 1);
  const McEstimate c = estimate_sff2(EnsembleSize(4), 1.5, config(77, 8000));
  unsetenv("CUE_SFF_THREADS");
  CHECK(a.value == c.value);
  const McEstimate d = estimate_sff2(EnsembleSize(4), 1.5, config(78, 8000));
  CHECK(a.value != d.value);
}

TEST_CASE("coverage of the two-sigma interval") {
  const EnsembleSize n(5);
  const double exact = sff2_exact(n, 2.5);
  int inside = 0;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const McEstimate e = estimate_sff2(n, 2.5, config(seed, 10000));
    if (std::fabs(e.value.real() - exact) <= 2.0 * e.std_error) ++inside;
  }
  CHECK(inside >= 40);
}
