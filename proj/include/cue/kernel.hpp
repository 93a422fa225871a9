#ifndef CUE_KERNEL_HPP
#define CUE_KERNEL_HPP

// Determinantal structure of the CUE eigenangle process.

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "cue/types.hpp"

namespace cue {

/// K_N(theta, phi) = (1/2pi) sum_{l<N} exp(i l (theta - phi)).
///
/// Evaluated as a geometric sum, exp(i(N-1)u/2) sin(Nu/2) / (2pi sin(u/2)),
/// after reducing u = theta - phi to [-pi, pi]. Below |u| = 1e-8 a Taylor
/// expansion replaces the ratio, so theta == phi gives N/(2pi).
std::complex<double> kernel_eval(EnsembleSize n, double theta, double phi);

/// [K_N(theta_j, theta_k)]_{j,k}
Eigen::MatrixXcd kernel_matrix(EnsembleSize n, std::span<const double> points);

/// n-point correlation function det[K_N(theta_j, theta_k)], 1 <= n <= N.
double rho(EnsembleSize n, std::span<const double> points);

/// sum_{j<k} 2 ln|exp(i theta_j) - exp(i theta_k)|. The normalisation is
/// omitted. Coincident angles give -infinity.
double log_jpdf_unnormalized(EnsembleSize n, std::span<const double> angles);

/// Change of log_jpdf_unnormalized when angles[j] is replaced by `proposed`.
/// O(N).
double log_jpdf_delta(std::span<const double> angles, std::size_t j, double proposed);

}  // namespace cue

#endif  // CUE_KERNEL_HPP
