#pragma once

#include <stdexcept>
#include <string>

namespace thetasum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or within 1e-12 of) a pole of the function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation, e.g. Re(a) <= 0.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index outside a supported table range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The generic expansion was asked for an even integer exponent.
class EvenExponentError : public Error {
 public:
  using Error::Error;
};

/// The even-exponent transform was given w != 2m.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Direct summation would need more than the permitted number of terms.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A requested quantity is below the binary64 noise floor.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace thetasum
