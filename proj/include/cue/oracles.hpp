#ifndef CUE_ORACLES_HPP
#define CUE_ORACLES_HPP

// Reference computations that avoid the polygamma closed forms wherever an
// elementary sum exists.

#include <complex>
#include <variant>

#include "cue/report.hpp"
#include "cue/types.hpp"

namespace cue {

/// sum_{a=-(N-1)}^{N-1} (N - |a|) / (k - a), summed directly.
double t_sum(EnsembleSize n, double k);

/// N - (1/2pi^2)(1 - cos 2pi k) sum_{l,m<N} (k + l - m)^-2, or |k| at
/// integer |k| <= N - 1.
double sff2_sum(EnsembleSize n, double k);

struct DiagSums {
  double value;     // Re S3(k, -k)
  double forward;   // sum_{l,m,p} 1/((k+l-p)(k+l-m))
  double reversed;  // sum_{l,m,p} 1/((k-l+p)(k-l+m))
  double reduced;   // sum_l (psi0(k+1+l) - psi0(k-N+1+l))^2
};

/// Proof-level rational sums for Re S3(k, -k), k non-integer:
///   sin^2(pi k)/(2 pi^3) (forward + reversed) - sin(2 pi k)/(2 pi^2) t_sum(N, k).
DiagSums sff3_diag_sum(EnsembleSize n, double k);

/// The published pre-simplification expression for Re S3(k, -k), verbatim
/// (triple sums plus A/B digamma terms). Disagrees with the defining integral.
double sff3_diag_sum_published(EnsembleSize n, double k);

/// Pre-simplification double sums for Re S3(k, b), b >= 0 integer,
/// k non-integer. O(N^2).
double sff3_kb_sum(EnsembleSize n, double k, int b);

/// sum_{i=1}^{n} psi0(a+i)^2 summed directly vs its closed form.
OracleReport check_sum_identity_psi2(double a, int n, double tolerance = 1e-10);

/// sum_{i=1}^{n} psi0(a+i) summed directly vs its closed form.
OracleReport check_sum_identity_psi(double a, int n, double tolerance = 1e-10);

struct DiagonalFrequency {};

/// Second Fourier frequency: an integer b >= 0, or the diagonal b = -k.
using SecondFrequency = std::variant<int, DiagonalFrequency>;

struct QuadratureResult {
  std::complex<double> value;
  double resolution_gap;  // |coarse - fine|
  int nodes_per_axis;     // of the fine grid
};

/// int int exp(i(k x + b y)) N3(x, y, 0) dx dy over [0, 2pi)^2.
///
/// delta-terms are integrated analytically down to 1D quadratures or exact
/// Fourier factors; the smooth remainder rho3 - c (rho2 + rho2 + rho2) + 2c^3
/// goes through 2D composite Gauss-Legendre (>= 32N nodes per axis) built on
/// kernel::rho. Two resolutions are compared; a gap above 1e-6 raises
/// AccuracyError. `refinement` multiplies the panel count.
QuadratureResult s3_quadrature_detailed(EnsembleSize n, double k, SecondFrequency second,
                                        int refinement = 1);
std::complex<double> s3_quadrature(EnsembleSize n, double k, SecondFrequency second);

/// Same integral, evaluated exactly by expanding the kernel into its N
/// Fourier modes: every term reduces to products of
/// F(w) = int_0^{2pi} exp(i w x) dx. Any real k, b. O(N^2).
std::complex<double> s3_fourier_sum(EnsembleSize n, double k, double b);

}  // namespace cue

#endif  // CUE_ORACLES_HPP
