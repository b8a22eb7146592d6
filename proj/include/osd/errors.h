#pragma once

#include <stdexcept>
#include <string>

namespace osd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad domain polygon, unparsable config string, bad JSON.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A dyadic square is not contained in the closed domain.
class NotContainedError : public Error {
 public:
  using Error::Error;
};

/// No chain connects two squares within the side-ratio window.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

/// A construction could not produce a valid object (too coarse depth,
/// degenerate layering, coverage hole, missing anchor, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A quadrature node produced a NaN or an infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace osd
