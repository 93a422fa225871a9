#ifndef CUE_SFF3_HPP
#define CUE_SFF3_HPP

// Real part of the third-order spectral form factor
//   S3(k, b) = int int exp(i(k x + b y)) N3(x, y, 0) dx dy
// on the diagonal b = -k and at integer b >= 0.

#include <functional>

#include "cue/types.hpp"

namespace cue {

struct ThirdOrderQuery {
  EnsembleSize n;
  double k;
  int b = 0;
};

/// Theta(x) with Theta(0) = 1.
constexpr int unit_step(long x) noexcept { return x >= 0 ? 1 : 0; }

/// Closed form of sum_{i=1}^{n} psi0(a+i)^2:
/// (a+n) psi0(a+n)^2 - (2a+2n-1) psi0(a+n) - a psi0(a)^2 + (2a-1) psi0(a) + 2n.
double sum_psi_squared_closed(double a, int n);

/// Closed form of sum_{i=1}^{n} psi0(a+i): (n+a) psi0(n+a+1) - a psi0(a+1) - n.
double sum_psi_closed(double a, int n);

/// Published one-sided term f(N, k) of the diagonal third-order SFF, verbatim.
/// It does NOT reproduce the defining integral (see docs/deviations.json); it
/// is kept so the discrepancy can be measured.
double f_term(EnsembleSize n, double k);

/// f(N, k) + f(N, -k), the published diagonal form.
double re_s3_diag_published(EnsembleSize n, double k);

struct DiagEvaluation {
  double value = 0.0;
  double extrapolation_error = 0.0;  // zero off the limit path
  bool limit_path = false;           // k was an integer
  bool nonzero_at_integer = false;   // limit differs from 0 beyond the error estimate
};

/// Re S3(k, -k) in semi-closed form:
///   (sin^2(pi k)/pi^3) sum_{l<N} (psi0(k+1+l) - psi0(k-N+1+l))^2
///     - (sin(2 pi k)/(2 pi^2)) T(k, N),
/// the square sum expanded with the psi0^2 summation identity, T from
/// lemma_t. Integer k goes through a symmetric Richardson limit.
DiagEvaluation re_s3_diag_detailed(EnsembleSize n, double k);
double re_s3_diag(EnsembleSize n, double k);

/// Re S3(k+1, -(k+1)) - Re S3(k, -k) in closed form.
double delta_re_s3(EnsembleSize n, double k);

/// Published closed form of the same difference, verbatim. Agrees with the
/// difference of re_s3_diag_published, not with the defining integral.
double delta_re_s3_published(EnsembleSize n, double k);

/// Re S3(k, b) for integer b >= 0 and any real k. At integer k each
/// bracket term c(k) psi0(arg(k)) whose argument hits a pole contributes
/// -c(m)/(2 pi); the finite ones are annihilated by sin(2 pi m).
double re_s3_kb(EnsembleSize n, double k, int b);
inline double re_s3_kb(const ThirdOrderQuery& q) { return re_s3_kb(q.n, q.k, q.b); }

struct Extrapolation {
  double value;
  double error;
};

/// lim_{eps->0} f(at + eps) from symmetric averages at eps in {1e-4, 1e-5, 1e-6}
/// and two Richardson levels; error is the gap between the levels.
Extrapolation symmetric_limit(const std::function<double(double)>& f, double at);

}  // namespace cue

#endif  // CUE_SFF3_HPP
