#ifndef CUE_SPECFUN_HPP
#define CUE_SPECFUN_HPP

// Real-argument digamma / trigamma and the trigonometric helpers the closed
// forms rely on. Header-only, templated on the floating type.

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <sstream>
#include <string>

#include "cue/errors.hpp"

namespace cue {

template <std::floating_point Real>
struct PoleDecomposition {
  // psi0(-n + eps) = residue_coefficient / eps + finite_part + O(eps)
  Real residue_coefficient;
  Real finite_part;
};

namespace detail {

template <std::floating_point Real>
std::string arg_string(Real x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Below this the argument is pushed up by recurrence before the asymptotic
// series is used. With eight Bernoulli terms the truncation error at 10 is
// below 1e-16.
template <std::floating_point Real>
inline constexpr Real kAsymptoticThreshold = Real(10);

// B_{2j} / (2j) for j = 1..8
template <std::floating_point Real>
inline constexpr std::array<Real, 8> kDigammaSeries = {
    Real(1) / Real(12),     Real(-1) / Real(120),      Real(1) / Real(252),
    Real(-1) / Real(240),   Real(1) / Real(132),       Real(-691) / Real(32760),
    Real(1) / Real(12),     Real(-3617) / Real(8160)};

// B_{2j} for j = 1..8
template <std::floating_point Real>
inline constexpr std::array<Real, 8> kTrigammaSeries = {
    Real(1) / Real(6),    Real(-1) / Real(30),     Real(1) / Real(42),
    Real(-1) / Real(30),  Real(5) / Real(66),      Real(-691) / Real(2730),
    Real(7) / Real(6),    Real(-3617) / Real(510)};

template <std::floating_point Real>
Real digamma_asymptotic(Real x) {
  const Real inv2 = Real(1) / (x * x);
  Real pw = inv2;
  Real tail = 0;
  for (Real c : kDigammaSeries<Real>) {
    tail += c * pw;
    pw *= inv2;
  }
  return std::log(x) - Real(0.5) / x - tail;
}

template <std::floating_point Real>
Real trigamma_asymptotic(Real x) {
  const Real inv = Real(1) / x;
  const Real inv2 = inv * inv;
  Real pw = inv2 * inv;
  Real tail = 0;
  for (Real c : kTrigammaSeries<Real>) {
    tail += c * pw;
    pw *= inv2;
  }
  return inv + Real(0.5) * inv2 + tail;
}

// Splits x = n + f with n integer (as Real) and |f| <= 1/2, exactly.
template <std::floating_point Real>
void split_nearest(Real x, Real& n, Real& f) {
  n = std::nearbyint(x);
  f = x - n;
}

template <std::floating_point Real>
bool is_odd_integer(Real n) {
  return std::fmod(std::fabs(n), Real(2)) == Real(1);
}

}  // namespace detail

/// True when x is one of 0, -1, -2, ...
template <std::floating_point Real>
bool is_nonpositive_integer(Real x) {
  return x <= Real(0) && std::nearbyint(x) == x;
}

template <std::floating_point Real>
bool is_integer(Real x) {
  return std::isfinite(x) && std::nearbyint(x) == x;
}

/// sin(pi x), exactly zero at integers; reduction uses the exact fractional part.
template <std::floating_point Real>
Real sin_pi(Real x) {
  Real n, f;
  detail::split_nearest(x, n, f);
  const Real s = std::sin(std::numbers::pi_v<Real> * f);
  return detail::is_odd_integer(n) ? -s : s;
}

/// cos(pi x), exactly +-1 at integers.
template <std::floating_point Real>
Real cos_pi(Real x) {
  Real n, f;
  detail::split_nearest(x, n, f);
  const Real c = std::cos(std::numbers::pi_v<Real> * f);
  return detail::is_odd_integer(n) ? -c : c;
}

/// cot(pi x) from the fractional part of x. Infinite at integers.
template <std::floating_point Real>
Real cot_pi(Real x) {
  Real n, f;
  detail::split_nearest(x, n, f);
  const Real a = std::numbers::pi_v<Real> * f;
  return std::cos(a) / std::sin(a);
}

/// Digamma psi0(x). Negative non-integer arguments go through the reflection
/// psi0(-y) = psi0(y + 1) + pi cot(pi y).
template <std::floating_point Real>
Real digamma(Real x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x))
    throw PoleError("digamma: pole at x = " + detail::arg_string(x));
  if (x < Real(0)) {
    const Real y = -x;
    return digamma(y + Real(1)) + std::numbers::pi_v<Real> * cot_pi(y);
  }
  Real shift = 0;
  while (x < detail::kAsymptoticThreshold<Real>) {
    shift += Real(1) / x;
    x += Real(1);
  }
  return detail::digamma_asymptotic(x) - shift;
}

/// Trigamma psi1(x) for x > 0.
template <std::floating_point Real>
Real trigamma(Real x) {
  if (!(x > Real(0)))
    throw DomainError("trigamma: requires x > 0, got " + detail::arg_string(x));
  Real shift = 0;
  while (x < detail::kAsymptoticThreshold<Real>) {
    shift += Real(1) / (x * x);
    x += Real(1);
  }
  return detail::trigamma_asymptotic(x) + shift;
}

/// psi_order(x + n) - psi_order(x) for order in {0, 1}.
///
/// Computed twice: through the finite sum (-1)^order order! sum 1/(x+i)^(order+1)
/// and through two function evaluations. The sum is returned; an AccuracyError
/// is raised if the two disagree by more than 1e-11 (relative to max(1, |sum|)).
template <std::floating_point Real>
Real psi_difference(Real x, int n, int order) {
  if (n < 1) throw DomainError("psi_difference: n must be >= 1");
  if (order != 0 && order != 1) throw DomainError("psi_difference: order must be 0 or 1");
  Real sum = 0;
  for (int i = 0; i < n; ++i) {
    const Real t = x + Real(i);
    if (order == 0) {
      if (is_nonpositive_integer(t))
        throw PoleError("psi_difference: pole at x + " + std::to_string(i));
      sum += Real(1) / t;
    } else {
      if (!(t > Real(0)))
        throw DomainError("psi_difference: trigamma needs x + i > 0");
      sum -= Real(1) / (t * t);
    }
  }
  const Real via_functions = order == 0 ? digamma(x + Real(n)) - digamma(x)
                                        : trigamma(x + Real(n)) - trigamma(x);
  const Real scale = std::fmax(Real(1), std::fabs(sum));
  if (std::fabs(via_functions - sum) > Real(1e-11) * scale)
    throw AccuracyError("psi_difference: sum and function paths disagree at x = " +
                        detail::arg_string(x));
  return sum;
}

/// psi0(-n + eps) = -1/eps + psi0(n + 1) + O(eps).
template <std::floating_point Real = double>
PoleDecomposition<Real> digamma_pole_decomposition(int n) {
  if (n < 0) throw DomainError("digamma_pole_decomposition: n must be >= 0");
  return {Real(-1), digamma(Real(n) + Real(1))};
}

}  // namespace cue

#endif  // CUE_SPECFUN_HPP
