#pragma once

#include <stdexcept>
#include <string>

namespace chromatic {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad prime, bad indices, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A resource budget (rewrite steps, series terms, matrix size) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Arithmetic produced something the mathematics forbids: a residual
/// denominator, a non-unit solving coefficient, a contradictory relation.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (JSON schema violation).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace chromatic
