#pragma once

#include <stdexcept>
#include <string>

namespace hpl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class CurvatureMismatch : public Error {
 public:
  using Error::Error;
};

class NotInIdeal : public Error {
 public:
  using Error::Error;
};

class NeumannCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when a truncation order is too small for an operation to be exact.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An input failed one of its defining equations. The message names the
/// equation; callers wanting the residual use the validators directly.
class InvalidData : public Error {
 public:
  using Error::Error;
};

}  // namespace hpl
