#pragma once

#include <stdexcept>
#include <string>

namespace latineq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad axis, non-positive exponent, dimension mismatch.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain an inequality is stated on (negative entries
/// where f >= 0 is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The zero function or the empty set, where every inequality reads 0 <= 0.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A stated precondition does not hold, e.g. ||f||_p != 1 for the
/// logarithmic inequalities without normalization.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration request that exceeds its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace latineq
