#pragma once

#include <stdexcept>
#include <string>

namespace sphcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A (degree, order) pair is not a valid spherical harmonic index.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A linear index lies outside [0, N).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input is degenerate (e.g. a zero matrix where a norm is required).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the allowed work budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sphcs
