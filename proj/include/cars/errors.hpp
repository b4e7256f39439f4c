#pragma once

#include <stdexcept>
#include <string>

namespace cars {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Tensor asymmetry above the rejection threshold.
class SymmetryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An energy denominator fell below the resonance guard.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

class MissingMomentError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Malformed model file: missing or mistyped field.
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Level roles in a states-form model reference unknown levels.
class RoleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace cars
