#pragma once

#include <stdexcept>
#include <string>

namespace chulink {

// Invalid arguments and configuration map to exit code 2 in the CLI;
// everything numerical (singularities, non-convergence) maps to 3.

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula hit a pole: r = 0, d = 0, or a vanishing two-port determinant.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature or root finding failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        detail_(what),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }
  NumericalError with_context(const std::string& prefix) const {
    return NumericalError(prefix + detail_, residual_);
  }

 private:
  std::string detail_;
  double residual_;
};

/// An output file could not be written or an input file read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chulink
