#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularBasis : public Error {
 public:
  SingularBasis() : Error("basis is singular (|det| below tolerance)") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Enumeration or search budget exhausted.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of zeta, Gamma_R or xi.
class PoleError : public Error {
 public:
  using Error::Error;
};

class NonZeroSum : public Error {
 public:
  NonZeroSum() : Error("character coordinates nu must sum to zero") {}
};

class OrderViolation : public Error {
 public:
  OrderViolation() : Error("block B must precede block C") {}
};

class SinglePart : public Error {
 public:
  SinglePart() : Error("weight bounds need a division with at least two parts") {}
};

/// An LLL output that is missing from the enumerated reduced-basis set.
class UnmatchedOutput : public Error {
 public:
  using Error::Error;
};

}  // namespace siegel
