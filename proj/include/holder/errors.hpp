#pragma once

#include <stdexcept>
#include <string>

namespace holder {

/// Base of every error raised by this library. Callers that only need to
/// distinguish "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value outside the strictly-positive finite domain, or an ill-formed
/// argument (empty tuple, bad grid, n out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Single-tuple functional requested at p = 0.
class UndefinedExponentError : public Error {
 public:
  UndefinedExponentError() : Error("holder functional is undefined at p=0") {}
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t a, std::size_t b)
      : Error("tuple length mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

/// Brute-force enumeration refused because n! is too large.
class InstanceTooLargeError : public Error {
 public:
  InstanceTooLargeError(std::size_t n, std::size_t cap)
      : Error("instance too large: n=" + std::to_string(n) +
              " exceeds brute-force cap " + std::to_string(cap)) {}
};

/// Operation needs a positive exponent and got a negative one.
class OrientationError : public Error {
 public:
  using Error::Error;
};

/// Accumulator queried before any element was pushed.
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace holder
