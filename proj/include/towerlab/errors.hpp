#pragma once

#include <stdexcept>
#include <string>

namespace towerlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-prime p, k = 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live in different field contexts.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands belong to different field contexts") {}
};

/// Field size or enumeration size exceeds the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Inversion of zero, evaluation at a missing coordinate, and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A b/c exponent is not divisible by q-1, so it cannot be rewritten.
class NonReducibleExponent : public Error {
 public:
  using Error::Error;
};

/// A denominator factor outside {a_i, a_i-1, a_i^q+a_i-1, c_i^(q-1)-1}.
class UndeclaredDenominator : public Error {
 public:
  using Error::Error;
};

}  // namespace towerlab
