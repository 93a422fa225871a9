#ifndef CUE_SFF2_HPP
#define CUE_SFF2_HPP

// Second-order spectral form factor S_N(k) of CUE: exact closed form for all
// real k and its large-N expansions.

#include "cue/types.hpp"

namespace cue {

struct SffQuery {
  EnsembleSize n;
  double k;
};

/// Point x0 = k/N on the rescaled axis and a shift tau with |tau| < N.
struct FluctuationQuery {
  EnsembleSize n;
  double x0;
  double tau;
};

/// S_N(k) = min(N, |k| - sin(2pi|k|)/2pi)
///        + sin^2(pi|k|)/pi^2 [psi0(N+|k|) + (N+|k|) psi1(N+|k|)
///          + psi0(|N-|k||+1) + |N-|k|| psi1(|N-|k||+1) - 2|k| psi1(|k|+1) - 2 psi0(|k|+1)]
///
/// Every polygamma argument is >= 1, so no branch is needed at integer k.
double sff2_exact(EnsembleSize n, double k);
inline double sff2_exact(const SffQuery& q) { return sff2_exact(q.n, q.k); }

/// Integer-time staircase min(|k|, N).
double sff2_staircase(EnsembleSize n, double k);

/// sum_{|a|<N} (N - |a|)/(k - a) in closed form:
/// (N+k)(psi0(N+k) - psi0(k)) - (N-k)(psi0(N-k) - psi0(-k)) - N/k.
/// Poles at integer k with |k| < N. At integers |k| >= N the digamma
/// differences are summed directly.
double lemma_t(EnsembleSize n, double k);

/// Ramp regime k = tN. The log term is dropped at t in {0, +-1}, where its
/// product with the sin^2 prefactor tends to 0.
double asym_ramp(EnsembleSize n, double t);

/// Finite part h(k) of the k = O(1) expansion.
double h_term(double k);

/// (2 sin^2(pi|k|)/pi^2) ln N + h(k). Requires N >= 2.
double asym_order1(EnsembleSize n, double k);

/// mu_n(x0) = 1/(1+x0)^n + (-1)^n/(1-x0)^n - 2/x0^n, n in {1,2,3}, 0 < x0 < 1.
double mu(int order, double x0);

/// Asymptotic Delta(x0, tau) = S_N(N x0 + tau) - min(N, N x0) through O(N^-3).
/// Separate expansions for 0 < x0 < 1, x0 = 0 and x0 = 1; tau = 0 at the
/// end points returns the limit 0.
double delta_fluctuation(const FluctuationQuery& q);

/// Delta(x0, tau) straight from sff2_exact.
double fluctuation_exact(const FluctuationQuery& q);

}  // namespace cue

#endif  // CUE_SFF2_HPP
