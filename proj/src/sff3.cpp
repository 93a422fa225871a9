#include "cue/sff3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cue/sff2.hpp"
#include "cue/specfun.hpp"

namespace cue {
namespace {

constexpr double kPiSq = kPi * kPi;
constexpr double kPiCube = kPiSq * kPi;

// Corrected diagonal form at a non-integer k.
double diag_closed(EnsembleSize n, double k) {
  const int big_n = n.value();
  double cross = 0.0;
  for (int i = 1; i <= big_n; ++i) cross += digamma(k + i) * digamma(k - big_n + i);
  const double squares =
      sum_psi_squared_closed(k, big_n) + sum_psi_squared_closed(k - big_n, big_n) - 2.0 * cross;
  const double s = sin_pi(k);
  return s * s / kPiCube * squares - sin_pi(2.0 * k) / (2.0 * kPiSq) * lemma_t(n, k);
}

// One bracket term w (k + a) psi0(k + a + 1).
struct BracketTerm {
  double weight;
  int offset;
};

}  // namespace

double sum_psi_squared_closed(double a, int n) {
  const double p_end = digamma(a + n);
  const double p_start = digamma(a);
  return (a + n) * p_end * p_end - (2.0 * a + 2.0 * n - 1.0) * p_end - a * p_start * p_start +
         (2.0 * a - 1.0) * p_start + 2.0 * n;
}

double sum_psi_closed(double a, int n) {
  return (n + a) * digamma(n + a + 1.0) - a * digamma(a + 1.0) - n;
}

double f_term(EnsembleSize n, double k) {
  const int big_n = n.value();
  const double nn = n.real();
  const double s = sin_pi(k);
  const double c = cos_pi(k);
  const double s2 = s * s;
  const double pi2 = kPiSq;

  double sum = 0.0;
  for (int l = 1; l <= big_n; ++l) sum += digamma(k + l) * digamma(-k - l + nn + 1.0);

  const double psi_kn = digamma(k + nn);
  const double psi_k = digamma(k);

  double f = -s2 / kPiCube * sum;
  f += s / (kPiCube * k) *
       ((-2.0 * k * k - 3.0 * k * nn + 4.0 * pi2 * nn * (k + nn) + k - nn * nn) * s -
        2.0 * kPi * (2.0 * pi2 - 1.0) * k * (k + nn) * c) *
       psi_kn;
  f += (k + nn) / kPiCube * s2 * psi_kn * psi_kn;
  f += (4.0 * pi2 - 1.0) / kPiCube * s * (kPi * k * c - nn * s) * psi_k;
  f += ((4.0 - pi2 + 4.0 * pi2 * pi2) * nn - 2.0) / (2.0 * kPiCube) * s2;
  f += 3.0 * (1.0 - 4.0 * pi2) * nn / (4.0 * kPi);
  f -= (2.0 * k * k + nn * nn - 4.0 * pi2 * nn * nn) / (2.0 * pi2 * k) * s * c;
  return f;
}

double re_s3_diag_published(EnsembleSize n, double k) { return f_term(n, k) + f_term(n, -k); }

Extrapolation symmetric_limit(const std::function<double(double)>& f, double at) {
  constexpr std::array<double, 3> eps = {1e-4, 1e-5, 1e-6};
  std::array<double, 3> g{};
  for (std::size_t i = 0; i < eps.size(); ++i) g[i] = 0.5 * (f(at + eps[i]) + f(at - eps[i]));
  // g(eps) = L + c eps^2 + ...; eps shrinks by 10 between levels.
  const double r1 = (100.0 * g[1] - g[0]) / 99.0;
  const double r2 = (100.0 * g[2] - g[1]) / 99.0;
  return {r2, std::fabs(r2 - r1)};
}

DiagEvaluation re_s3_diag_detailed(EnsembleSize n, double k) {
  DiagEvaluation out;
  if (!is_integer(k)) {
    out.value = diag_closed(n, k);
    return out;
  }
  const Extrapolation lim = symmetric_limit([n](double x) { return diag_closed(n, x); }, k);
  out.value = lim.value;
  out.extrapolation_error = lim.error;
  out.limit_path = true;
  // Re S3(m, -m) is a joint cumulant containing A_0 = N and must vanish.
  out.nonzero_at_integer = std::fabs(lim.value) > lim.error + 1e-9;
  return out;
}

double re_s3_diag(EnsembleSize n, double k) { return re_s3_diag_detailed(n, k).value; }

double delta_re_s3(EnsembleSize n, double k) {
  const double nn = n.real();
  const double up = digamma(k + nn + 1.0);
  const double mid = digamma(k + 1.0);
  const double down = digamma(k - nn + 1.0);
  const double s = sin_pi(k);
  const double hi = up - mid;
  const double lo = mid - down;
  return s * s / kPiCube * (hi * hi - lo * lo) -
         sin_pi(2.0 * k) / (2.0 * kPiSq) * (up + down - 2.0 * mid);
}

double delta_re_s3_published(EnsembleSize n, double k) {
  const double nn = n.real();
  const double up = digamma(k + nn + 1.0);
  const double mid = digamma(k + 1.0);
  const double down = digamma(k - nn + 1.0);
  const double s = sin_pi(k);
  const double s2 = s * s;
  double d = s2 * (down - up) *
             ((4.0 * kPiSq - 1.0) * nn * nn / (kPiCube * k * (k + 1.0)) + 2.0 / kPiCube * mid);
  d += s2 / kPiCube * (up * up - down * down);
  d += 2.0 * sin_pi(2.0 * k) * (-down - up + 2.0 * mid);
  return d;
}

double re_s3_kb(EnsembleSize n, double k, int b) {
  if (b < 0) throw DomainError("re_s3_kb: b must be a nonnegative integer");
  const int big_n = n.value();
  const double constant = static_cast<double>(big_n - std::max(0, big_n - b)) / kTwoPi;

  std::array<BracketTerm, 10> terms{};
  std::size_t count = 0;
  if (unit_step(static_cast<long>(big_n) - b - 1) == 1) {
    terms[count++] = {2.0, b - big_n};
    terms[count++] = {-2.0, b};
    terms[count++] = {-2.0, 0};
    terms[count++] = {2.0, big_n};
  }
  terms[count++] = {-1.0, b - big_n};
  terms[count++] = {-1.0, b + big_n};
  terms[count++] = {-1.0, big_n};
  terms[count++] = {2.0, b};
  terms[count++] = {-1.0, -big_n};
  terms[count++] = {2.0, 0};

  if (!is_integer(k)) {
    double bracket = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double shifted = k + terms[i].offset;
      bracket += terms[i].weight * shifted * digamma(shifted + 1.0);
    }
    return constant + sin_pi(2.0 * k) / (4.0 * kPiSq) * bracket;
  }

  // sin(2 pi (m + eps)) / (4 pi^2) ~ eps / (2 pi) meets residue / eps.
  const long m = std::lround(k);
  double poles = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const long arg = m + terms[i].offset + 1;
    if (arg > 0) continue;
    const auto pole = digamma_pole_decomposition<double>(static_cast<int>(-arg));
    poles += terms[i].weight * static_cast<double>(m + terms[i].offset) * pole.residue_coefficient;
  }
  return constant + poles / kTwoPi;
}

}  // namespace cue
