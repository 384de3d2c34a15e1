#pragma once

#include <stdexcept>
#include <string>

namespace spinglass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A requested sector or matrix exceeds the configured size budget.
class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Raising a state produced the zero vector (top-weight input).
class ZeroPromotion : public Error {
 public:
  using Error::Error;
};

}  // namespace spinglass
