#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A continued-fraction digit or Ostrowski digit outside its admissible range.
class InvalidDigitError : public Error {
 public:
  using Error::Error;
};

/// An index past the end of a finite expansion.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// A comparison that could not be decided within the refinement cap.
class RefinementExhaustedError : public Error {
 public:
  using Error::Error;
};

/// The operation needs an irrational rotation (or a value inside the exact field).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InvalidExpansionError : public Error {
 public:
  using Error::Error;
};

/// Input too large for a quadratic-cost routine.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Breakpoints could not be separated at the requested float precision.
class PrecisionInsufficientError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree exactly did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace birkhoff
