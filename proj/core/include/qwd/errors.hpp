#pragma once

#include <stdexcept>
#include <string>

namespace qwd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied malformed input (bad file, bad flag value, broken invariant).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotHermitian : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotPsd : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotDensity : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotPure : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class OutsideBlochBall : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The interior-point solver did not reach the requested accuracy.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// d² came out below the clamp window; a symptom of solver inaccuracy.
class ConcavityViolation : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace qwd
