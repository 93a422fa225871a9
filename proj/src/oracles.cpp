#include "cue/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "cue/kernel.hpp"
#include "cue/quadrature.hpp"
#include "cue/sff3.hpp"
#include "cue/specfun.hpp"

namespace cue {
namespace {

using cd = std::complex<double>;

constexpr double kPiSq = kPi * kPi;
constexpr double kPiCube = kPiSq * kPi;
constexpr int kPanelOrder = 16;
constexpr double kResolutionTolerance = 1e-6;

void require_off_integer_grid(double k, int big_n, const char* who) {
  if (is_integer(k) && std::fabs(k) <= big_n - 1)
    throw PoleError(std::string(who) + ": integer k inside [-(N-1), N-1]");
}

// F(w) = int_0^{2pi} exp(i w x) dx; exactly zero at nonzero integers.
cd fourier_factor(double w) {
  if (w == 0.0) return {kTwoPi, 0.0};
  const cd e(cos_pi(2.0 * w) - 1.0, sin_pi(2.0 * w));
  return e / cd(0.0, w);
}

// rho_n vanishes identically when n exceeds N.
double rho_or_zero(EnsembleSize n, std::initializer_list<double> pts) {
  if (static_cast<int>(pts.size()) > n.value()) return 0.0;
  return rho(n, std::span<const double>(pts.begin(), pts.size()));
}

std::string describe(EnsembleSize n, double k, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "N=" << n.value() << ",k=" << k << ",b=" << b;
  return os.str();
}

cd integrate_n3(EnsembleSize n, double k, double b, int panels) {
  const auto rule = composite_gauss_legendre<double>(0.0, kTwoPi, panels, kPanelOrder);
  const Eigen::Index m = rule.size();
  const double c = n.real() / kTwoPi;

  Eigen::VectorXd pair_at_zero(m);    // rho2(x, 0)
  Eigen::VectorXd pair_at_minus(m);   // rho2(-x, 0)
  Eigen::VectorXcd phase_k(m), phase_b(m), phase_kb(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = rule.nodes(i);
    pair_at_zero(i) = rho_or_zero(n, {x, 0.0});
    pair_at_minus(i) = rho_or_zero(n, {-x, 0.0});
    phase_k(i) = std::polar(1.0, k * x);
    phase_b(i) = std::polar(1.0, b * x);
    phase_kb(i) = std::polar(1.0, (k + b) * x);
  }

  // Smooth part: rho3(x,y,0) - c[rho2(x,y) + rho2(x,0) + rho2(y,0)] + 2c^3.
  cd smooth = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = rule.nodes(i);
    cd row = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double y = rule.nodes(j);
      const double g = rho_or_zero(n, {x, y, 0.0}) -
                       c * (rho_or_zero(n, {x, y}) + pair_at_zero(i) + pair_at_zero(j)) +
                       2.0 * c * c * c;
      row += rule.weights(j) * g * phase_b(j);
    }
    smooth += rule.weights(i) * phase_k(i) * row;
  }

  // delta(x - y) rho2(y, 0), delta(x) rho2(-y, 0), delta(y) rho2(x, 0).
  cd line = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    line += rule.weights(i) * (phase_kb(i) * pair_at_zero(i) + phase_b(i) * pair_at_minus(i) +
                               phase_k(i) * pair_at_zero(i));
  }

  // c delta(x) delta(y) and the three -c^2 delta terms.
  const cd point = c - c * c * (fourier_factor(k + b) + fourier_factor(b) + fourier_factor(k));
  return smooth + line + point;
}

}  // namespace

double t_sum(EnsembleSize n, double k) {
  const int big_n = n.value();
  require_off_integer_grid(k, big_n, "t_sum");
  double acc = 0.0;
  for (int a = -(big_n - 1); a <= big_n - 1; ++a) acc += (big_n - std::abs(a)) / (k - a);
  return acc;
}

double sff2_sum(EnsembleSize n, double k) {
  const int big_n = n.value();
  if (is_integer(k) && std::fabs(k) <= big_n - 1) return std::fabs(k);
  const double s = sin_pi(k);
  if (s == 0.0) return n.real();
  double acc = 0.0;
  for (int l = 0; l < big_n; ++l)
    for (int m = 0; m < big_n; ++m) {
      const double d = k + l - m;
      acc += 1.0 / (d * d);
    }
  // (1 - cos 2 pi k) / (2 pi^2) = sin^2(pi k) / pi^2
  return n.real() - s * s / kPiSq * acc;
}

DiagSums sff3_diag_sum(EnsembleSize n, double k) {
  const int big_n = n.value();
  require_off_integer_grid(k, big_n, "sff3_diag_sum");
  DiagSums out{};
  for (int l = 0; l < big_n; ++l)
    for (int m = 0; m < big_n; ++m)
      for (int p = 0; p < big_n; ++p) {
        out.forward += 1.0 / ((k + l - p) * (k + l - m));
        out.reversed += 1.0 / ((k - l + p) * (k - l + m));
      }
  for (int l = 0; l < big_n; ++l) {
    const double d = digamma(k + 1.0 + l) - digamma(k - big_n + 1.0 + l);
    out.reduced += d * d;
  }
  const double s = sin_pi(k);
  out.value = s * s / (2.0 * kPiCube) * (out.forward + out.reversed) -
              sin_pi(2.0 * k) / (2.0 * kPiSq) * t_sum(n, k);
  return out;
}

double sff3_diag_sum_published(EnsembleSize n, double k) {
  const int big_n = n.value();
  require_off_integer_grid(k, big_n, "sff3_diag_sum_published");
  const double nn = n.real();
  const double psi1 = digamma(1.0);
  auto a_term = [&](double x) { return digamma(1.0 + x) - psi1; };
  auto b_term = [&](double shift, double x) { return digamma(1.0 + x + shift) - psi1; };

  double t1 = 0.0, t2 = 0.0;
  for (int l = 0; l < big_n; ++l)
    for (int m = 0; m < big_n; ++m)
      for (int p = 0; p < big_n; ++p) {
        t1 += 1.0 / ((k + l - p) * (k + l - m));
        t2 += 1.0 / ((k - l + p) * (k - l + m));
      }
  const double s = sin_pi(k);
  const double c = cos_pi(k);
  const double one_minus_cos = 2.0 * s * s;  // 1 - cos(2 pi k)
  const double pi2 = kPiSq;

  double r = 2.0 * one_minus_cos / (8.0 * kPiCube) * (t1 + t2);
  r += nn * nn * one_minus_cos / (k * kPi) * digamma(k);
  r -= (k - nn) * s / (k * kPiCube) * (4.0 * k * kPiCube * c + nn * (1.0 - 2.0 * pi2) * s) *
       b_term(-nn, k);
  r += (k + nn) * s * (-4.0 * c + nn * (-1.0 + 2.0 * pi2) / (k * kPiCube) * s) * b_term(nn, k);
  r += nn * one_minus_cos / kPi * b_term(nn, -k);
  r -= nn * nn * one_minus_cos / (k * kPi) * digamma(k - nn);
  r -= nn * one_minus_cos / (k * kPi) * ((2.0 * k + nn) * a_term(-k) - (k + nn) * b_term(-nn, -k));
  r += 2.0 * s * (4.0 * k * c + nn * (1.0 - 2.0 * pi2) / kPiCube * s) * a_term(k);
  r += nn / kTwoPi - 2.0 * nn * kPi - nn * nn * nn * 2.0 * one_minus_cos / (8.0 * k * k * kPiCube);
  return r;
}

double sff3_kb_sum(EnsembleSize n, double k, int b) {
  if (b < 0) throw DomainError("sff3_kb_sum: b must be >= 0");
  const int big_n = n.value();
  if (is_integer(k)) throw PoleError("sff3_kb_sum: requires non-integer k");
  const double nn = n.real();
  const double delta_b0 = b == 0 ? 1.0 : 0.0;
  const double overlap = static_cast<double>(std::max(big_n - std::abs(b), 0));
  const double s2 = sin_pi(2.0 * k);
  const double f4 = 4.0 * kPiSq;  // (2 pi)^2

  auto full = [&](double shift) {
    double acc = 0.0;
    for (int p = 0; p < big_n; ++p)
      for (int q = 0; q < big_n; ++q) acc += 1.0 / (shift + p - q);
    return acc;
  };
  const double full_k = full(k);
  const double full_bk = full(b + k);

  double restricted_p = 0.0;
  for (int p = std::max(0, b); p <= std::min(big_n - 1, b + big_n - 1); ++p)
    for (int q = 0; q < big_n; ++q) restricted_p += 1.0 / (k + p - q);
  double restricted_q = 0.0;
  for (int q = std::max(0, -b); q <= std::min(big_n - 1, -b + big_n - 1); ++q)
    for (int p = 0; p < big_n; ++p) restricted_q += 1.0 / (k + p - q);

  double r = -nn * s2 / f4 * delta_b0 * (nn * nn / k - full_k) - nn * s2 / f4 * delta_b0 * full_k;
  r += s2 / f4 * restricted_p + s2 / f4 * restricted_q;
  r += -nn * s2 * (nn * nn * delta_b0 - overlap) / (f4 * k) - nn * s2 * overlap / (f4 * k) -
       nn * nn * s2 / (f4 * k);
  r += (nn * nn * delta_b0 / kTwoPi - overlap / kTwoPi) +
       nn * nn * nn * s2 * delta_b0 / (2.0 * kPiSq * k) - nn * nn * delta_b0 / kTwoPi -
       nn * nn * s2 / (f4 * (b + k));
  r += s2 * (nn * nn / (f4 * (b + k)) - full_bk / f4);
  r += s2 * (nn * nn / (f4 * k) - full_k / f4) + nn / kTwoPi;
  return r;
}

OracleReport check_sum_identity_psi2(double a, int n, double tolerance) {
  double direct = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double p = digamma(a + i);
    direct += p * p;
  }
  std::ostringstream q;
  q.precision(17);
  q << "sum psi0^2: a=" << a << ",N=" << n;
  return make_report(q.str(), sum_psi_squared_closed(a, n), direct, tolerance);
}

OracleReport check_sum_identity_psi(double a, int n, double tolerance) {
  double direct = 0.0;
  for (int i = 1; i <= n; ++i) direct += digamma(a + i);
  std::ostringstream q;
  q.precision(17);
  q << "sum psi0: a=" << a << ",N=" << n;
  return make_report(q.str(), sum_psi_closed(a, n), direct, tolerance);
}

QuadratureResult s3_quadrature_detailed(EnsembleSize n, double k, SecondFrequency second,
                                        int refinement) {
  if (n.value() > 8) throw DomainError("s3_quadrature: supports N <= 8");
  if (std::fabs(k) > 10.0) throw DomainError("s3_quadrature: supports |k| <= 10");
  if (refinement < 1) throw DomainError("s3_quadrature: refinement must be >= 1");
  double b;
  if (const int* bi = std::get_if<int>(&second)) {
    if (*bi < 0) throw DomainError("s3_quadrature: b must be >= 0");
    b = *bi;
  } else {
    b = -k;
  }
  // 16-point panels resolve exp(i w x) to ~1e-15 once w * width <= 8.
  const double top = std::max(std::fabs(k), std::fabs(b)) + 2.0 * n.real();
  const int panels =
      refinement * std::max(2 * n.value(), static_cast<int>(std::ceil(0.8 * top)) + 2);
  const cd coarse = integrate_n3(n, k, b, panels);
  const cd fine = integrate_n3(n, k, b, 2 * panels);
  const double gap = std::abs(fine - coarse);
  if (gap > kResolutionTolerance)
    throw AccuracyError("s3_quadrature: resolution gap " + std::to_string(gap) + " at " +
                        describe(n, k, b));
  return {fine, gap, 2 * panels * kPanelOrder};
}

std::complex<double> s3_quadrature(EnsembleSize n, double k, SecondFrequency second) {
  return s3_quadrature_detailed(n, k, second).value;
}

std::complex<double> s3_fourier_sum(EnsembleSize n, double k, double b) {
  const int big_n = n.value();
  const double c = n.real() / kTwoPi;

  // delta terms: |K(u)|^2 = (1/4pi^2) sum_{l,m} exp(i(l-m)u)
  cd deltas = 0.0;
  for (int l = 0; l < big_n; ++l)
    for (int m = 0; m < big_n; ++m) {
      const double d = l - m;
      deltas += fourier_factor(b + d) + fourier_factor(k + d) + fourier_factor(k + b + d);
    }

  // smooth term 2 Re[K(x-y) K(y) K(-x)] integrates to
  // sum_l [sum_p F(k+l-p)][sum_m F(b-l+m)] + [sum_p F(k-l+p)][sum_m F(b+l-m)]
  cd smooth = 0.0;
  for (int l = 0; l < big_n; ++l) {
    cd fk_fwd = 0.0, fb_fwd = 0.0, fk_rev = 0.0, fb_rev = 0.0;
    for (int j = 0; j < big_n; ++j) {
      fk_fwd += fourier_factor(k + l - j);
      fb_fwd += fourier_factor(b - l + j);
      fk_rev += fourier_factor(k - l + j);
      fb_rev += fourier_factor(b + l - j);
    }
    smooth += fk_fwd * fb_fwd + fk_rev * fb_rev;
  }
  return c - deltas / (4.0 * kPiSq) + smooth / (8.0 * kPiCube);
}

}  // namespace cue
