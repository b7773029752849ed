#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chiralret {

/// Input outside the allowed range. `field()` names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Geometric or spectral argument where a formula is undefined (r <= 0, k = 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Onsager factor evaluated at eps = -1/2 or mu = -1/2.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-discriminatory rate vanishes, so S is undefined.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimizer found no interior maximum on the requested branch.
class FlatLandscapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& message, std::string diagnostics)
      : std::runtime_error(message + " [" + diagnostics + "]"),
        diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// Finite-difference step too coarse relative to the separation.
class StepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace chiralret
