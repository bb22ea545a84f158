#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical function was called outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (bad step, bad range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Inputs are individually valid but incompatible with each other,
/// e.g. a time step smaller than the exp-sum validity range.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure failed or a result is not representable.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdiff
