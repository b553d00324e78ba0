#pragma once

#include <stdexcept>
#include <string>

namespace marketclear {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed rational literal or malformed market file.
struct ParseError : Error {
  using Error::Error;
};

// A vector or matrix does not have the size required by the operation.
struct DimensionMismatchError : Error {
  using Error::Error;
};

// A matching references a buyer or product outside 1..n.
struct IndexOutOfRangeError : Error {
  using Error::Error;
};

// Market data violates a model invariant (negative valuation, duplicate
// matching endpoint, missing prices where required).
struct InvalidMarketError : Error {
  using Error::Error;
};

// convex_combine called with alpha outside [0, 1].
struct AlphaOutOfRangeError : Error {
  using Error::Error;
};

// Operation requires a perfect matching but got a partial one.
struct NotPerfectError : Error {
  using Error::Error;
};

// Checker precondition: the given price vector does not clear the market.
struct NotClearingError : Error {
  NotClearingError(std::string which, const std::string& message)
      : Error(message), which_vector(std::move(which)) {}
  std::string which_vector;  // "p" or "q"
};

// Instance is too large for the exhaustive n! oracle.
struct OracleCapExceededError : Error {
  using Error::Error;
};

}  // namespace marketclear
