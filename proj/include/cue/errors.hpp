#ifndef CUE_ERRORS_HPP
#define CUE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cue {

// Argument sits on a pole of a polygamma function (or a rational sum).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Markov chain left its admissible acceptance window.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Internal resolution check of a numerical integral failed.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cue

#endif  // CUE_ERRORS_HPP
