#pragma once

#include <stdexcept>
#include <string>

namespace cx {

/// Invalid construction parameter (p <= 2, n < 2, singular matrix, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Jet evaluation at a point where the field is not differentiable.
class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coefficients that fail the ellipticity condition.
class NonEllipticError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

}  // namespace cx
