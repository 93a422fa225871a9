#ifndef CUE_QUADRATURE_HPP
#define CUE_QUADRATURE_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "cue/errors.hpp"

namespace cue {

template <std::floating_point Real>
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <std::floating_point Real>
struct QuadratureRule {
  Vec<Real> nodes;
  Vec<Real> weights;

  [[nodiscard]] Eigen::Index size() const { return nodes.size(); }
};

namespace detail {

// (P_n(x), P_n'(x)) by the three-term recurrence.
template <std::floating_point Real>
std::pair<Real, Real> legendre_with_derivative(int n, Real x) {
  Real prev = 1, cur = x;
  if (n == 0) return {Real(1), Real(0)};
  for (int k = 2; k <= n; ++k) {
    const Real next = ((2 * k - 1) * x * cur - (k - 1) * prev) / k;
    prev = cur;
    cur = next;
  }
  return {cur, Real(n) * (x * cur - prev) / (x * x - Real(1))};
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
template <std::floating_point Real = double>
QuadratureRule<Real> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule<Real> rule{Vec<Real>(n), Vec<Real>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(std::numbers::pi_v<Real> * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(n, x);
      const Real dx = p / dp;
      x -= dx;
      if (std::fabs(dx) <= Real(4) * std::numeric_limits<Real>::epsilon()) break;
    }
    const Real dp = detail::legendre_with_derivative(n, x).second;
    const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0;
  return rule;
}

/// Composite rule: `panels` equal panels on [a, b], each with an
/// `order`-point Gauss-Legendre rule.
template <std::floating_point Real = double>
QuadratureRule<Real> composite_gauss_legendre(Real a, Real b, int panels, int order) {
  if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
  const QuadratureRule<Real> base = gauss_legendre<Real>(order);
  const Real h = (b - a) / Real(panels);
  QuadratureRule<Real> rule{Vec<Real>(panels * order), Vec<Real>(panels * order)};
  for (int p = 0; p < panels; ++p) {
    const Real mid = a + h * (Real(p) + Real(0.5));
    rule.nodes.segment(p * order, order) = (base.nodes * (h / 2)).array() + mid;
    rule.weights.segment(p * order, order) = base.weights * (h / 2);
  }
  return rule;
}

}  // namespace cue

#endif  // CUE_QUADRATURE_HPP
