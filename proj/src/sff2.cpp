#include "cue/sff2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cue/specfun.hpp"

namespace cue {
namespace {

constexpr double kPiSq = kPi * kPi;

// psi0(x) + x psi1(x), the combination every second-order formula uses.
double psi_pair(double arg, double weight) {
  return digamma(arg) + weight * trigamma(arg);
}

}  // namespace

double sff2_exact(EnsembleSize n, double k) {
  const double big_n = n.real();
  const double a = std::fabs(k);
  const double d = std::fabs(big_n - a);
  const double ramp = std::min(big_n, a - sin_pi(2.0 * a) / kTwoPi);
  const double s = sin_pi(a);
  if (s == 0.0) return ramp;
  const double bracket = psi_pair(big_n + a, big_n + a) + psi_pair(d + 1.0, d) -
                         2.0 * psi_pair(a + 1.0, a);
  return ramp + s * s / kPiSq * bracket;
}

double sff2_staircase(EnsembleSize n, double k) { return std::min(std::fabs(k), n.real()); }

double lemma_t(EnsembleSize n, double k) {
  const double big_n = n.real();
  if (is_integer(k) && std::fabs(k) < big_n)
    throw PoleError("lemma_t: integer k inside (-N, N)");
  if (is_integer(k)) {
    // psi0(x + N) - psi0(x) = sum_{i<N} 1/(x+i) is finite although both
    // terms sit on poles for one of x = k, -k.
    double up = 0.0, down = 0.0;
    for (int i = 0; i < n.value(); ++i) {
      up += 1.0 / (k + i);
      down += 1.0 / (-k + i);
    }
    return (big_n + k) * up - (big_n - k) * down - big_n / k;
  }
  return (big_n + k) * (digamma(big_n + k) - digamma(k)) -
         (big_n - k) * (digamma(big_n - k) - digamma(-k)) - big_n / k;
}

double asym_ramp(EnsembleSize n, double t) {
  const double big_n = n.real();
  const double a = std::fabs(t);
  const double x = big_n * a;
  const double ramp = std::min(big_n, x - sin_pi(2.0 * x) / kTwoPi);
  if (a == 0.0 || a == 1.0) return ramp;
  const double s = sin_pi(x);
  return ramp + s * s / kPiSq * std::log(std::fabs(1.0 - a * a) / (a * a));
}

double h_term(double k) {
  const double a = std::fabs(k);
  const double s = sin_pi(a);
  const double c = 2.0 * s * s / kPiSq;
  return (1.0 - c * trigamma(a + 1.0)) * a - c * digamma(a + 1.0) - sin_pi(2.0 * a) / kTwoPi + c;
}

double asym_order1(EnsembleSize n, double k) {
  if (n.value() < 2) throw DomainError("asym_order1: requires N >= 2");
  const double s = sin_pi(std::fabs(k));
  return 2.0 * s * s / kPiSq * std::log(n.real()) + h_term(k);
}

double mu(int order, double x0) {
  if (order < 1 || order > 3) throw DomainError("mu: order must be 1, 2 or 3");
  if (!(x0 > 0.0 && x0 < 1.0)) throw DomainError("mu: requires 0 < x0 < 1");
  const double sign = order % 2 == 0 ? 1.0 : -1.0;
  return 1.0 / std::pow(1.0 + x0, order) + sign / std::pow(1.0 - x0, order) -
         2.0 / std::pow(x0, order);
}

double delta_fluctuation(const FluctuationQuery& q) {
  const double big_n = q.n.real();
  const double x0 = q.x0;
  const double tau = q.tau;
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw DomainError("delta_fluctuation: x0 outside [0, 1]");
  if (!(std::fabs(tau) < big_n)) throw DomainError("delta_fluctuation: requires |tau| < N");

  const double log_n = std::log(big_n);
  const double n2 = big_n * big_n;
  const double n3 = n2 * big_n;
  const double a = std::fabs(tau);

  if (x0 == 0.0) {
    if (tau == 0.0) return 0.0;
    const double s = sin_pi(a);
    const double bracket = 2.0 * log_n + (1.0 - 6.0 * tau * tau) / (6.0 * n2) -
                           2.0 * psi_pair(a, a) + 2.0;
    return a - sin_pi(2.0 * a) / kTwoPi + s * s / kPiSq * bracket;
  }
  if (x0 == 1.0) {
    if (tau == 0.0) return 0.0;
    const double s = sin_pi(tau);
    const double bracket = -log_n - 3.0 * tau / (2.0 * big_n) -
                           7.0 * (1.0 - 6.0 * tau * tau) / (48.0 * n2) -
                           5.0 * (2.0 * tau * tau * tau - tau) / (16.0 * n3) + psi_pair(a, a) -
                           1.0 + std::log(2.0);
    const double lead = tau < 0.0 ? tau - sin_pi(2.0 * tau) / kTwoPi : 0.0;
    return lead + s * s / kPiSq * bracket;
  }

  const double k = big_n * x0 + tau;
  const double s = sin_pi(k);
  const double bracket = std::log((1.0 - x0 * x0) / (x0 * x0)) + tau / big_n * mu(1, x0) +
                         (1.0 - 6.0 * tau * tau) / (12.0 * n2) * mu(2, x0) +
                         tau * (2.0 * tau * tau - 1.0) / (6.0 * n3) * mu(3, x0);
  return tau - sin_pi(2.0 * k) / kTwoPi + s * s / kPiSq * bracket;
}

double fluctuation_exact(const FluctuationQuery& q) {
  const double big_n = q.n.real();
  return sff2_exact(q.n, big_n * q.x0 + q.tau) - std::min(big_n, big_n * q.x0);
}

}  // namespace cue
