#ifndef CUE_TYPES_HPP
#define CUE_TYPES_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "cue/errors.hpp"

namespace cue {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Matrix dimension N of the ensemble. Always N >= 1.
class EnsembleSize {
 public:
  explicit EnsembleSize(int n) : n_(n) {
    if (n < 1) throw DomainError("ensemble size must be >= 1, got " + std::to_string(n));
  }
  [[nodiscard]] int value() const noexcept { return n_; }
  [[nodiscard]] double real() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(EnsembleSize, EnsembleSize) = default;

 private:
  int n_;
};

/// Maps an angle onto [0, 2pi). Never applied implicitly.
inline double canonical_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace cue

#endif  // CUE_TYPES_HPP
