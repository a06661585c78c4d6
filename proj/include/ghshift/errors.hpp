#pragma once

#include <stdexcept>
#include <string>

namespace ghshift {

/// Input outside the mathematical domain of an operation (non-positive wave
/// numbers, negative times, angles outside (0, pi/2), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed-form prediction was requested outside the regime in which it holds.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First-order expansion of the reflection coefficient diverges (critical
/// incidence). Callers should switch to the mean-value formulas.
class SingularExpansionError : public ValidityError {
 public:
  using ValidityError::ValidityError;
};

/// Quadrature failed to converge, or a root could not be bracketed.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  explicit NumericError(const std::string& what)
      : NumericError(what, 0.0) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// The sampled profile does not contain its maximum (grid must be recentred).
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The profile carries no usable structure (flat, zero norm).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ghshift
