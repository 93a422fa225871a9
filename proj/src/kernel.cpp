#include "cue/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cue {
namespace {

constexpr double kTaylorCutoff = 1e-8;

// ln|exp(ia) - exp(ib)| = ln|2 sin((a - b)/2)|
double log_chord(double a, double b) {
  const double s = std::fabs(2.0 * std::sin(0.5 * (a - b)));
  return s == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(s);
}

}  // namespace

std::complex<double> kernel_eval(EnsembleSize n, double theta, double phi) {
  const double big_n = n.real();
  // The sum is 2pi-periodic in u, so the reduced difference gives the same value.
  double u = theta - phi;
  u -= kTwoPi * std::nearbyint(u / kTwoPi);

  double ratio;  // sin(N u / 2) / sin(u / 2)
  if (std::fabs(u) < kTaylorCutoff) {
    ratio = big_n * (1.0 - (big_n * big_n - 1.0) * u * u / 24.0);
  } else {
    ratio = std::sin(0.5 * big_n * u) / std::sin(0.5 * u);
  }
  const std::complex<double> phase = std::polar(1.0, 0.5 * (big_n - 1.0) * u);
  return phase * (ratio / kTwoPi);
}

Eigen::MatrixXcd kernel_matrix(EnsembleSize n, std::span<const double> points) {
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd k(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    k(a, a) = n.real() / kTwoPi;
    for (Eigen::Index b = a + 1; b < m; ++b) {
      k(a, b) = kernel_eval(n, points[a], points[b]);
      k(b, a) = std::conj(k(a, b));
    }
  }
  return k;
}

double rho(EnsembleSize n, std::span<const double> points) {
  const auto m = static_cast<int>(points.size());
  if (m < 1) throw DimensionError("rho: need at least one point");
  if (m > n.value())
    throw DimensionError("rho: " + std::to_string(m) + " points exceed N = " +
                         std::to_string(n.value()));
  if (m == 1) return n.real() / kTwoPi;
  // Hermitian positive semidefinite, so the determinant is real.
  return kernel_matrix(n, points).partialPivLu().determinant().real();
}

double log_jpdf_unnormalized(EnsembleSize n, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != n.value())
    throw DimensionError("log_jpdf_unnormalized: expected N angles");
  double acc = 0.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (std::size_t k = j + 1; k < angles.size(); ++k) {
      const double l = log_chord(angles[j], angles[k]);
      if (std::isinf(l)) return -std::numeric_limits<double>::infinity();
      acc += 2.0 * l;
    }
  }
  return acc;
}

double log_jpdf_delta(std::span<const double> angles, std::size_t j, double proposed) {
  double acc = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i == j) continue;
    const double after = log_chord(proposed, angles[i]);
    if (std::isinf(after)) return -std::numeric_limits<double>::infinity();
    acc += 2.0 * (after - log_chord(angles[j], angles[i]));
  }
  return acc;
}

}  // namespace cue
