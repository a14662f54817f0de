#pragma once

#include <stdexcept>
#include <string>

namespace contractlab {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A set or vector does not match the ground set of the function it is used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive work would exceed the configured desk-scale cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed construction parameters (bad codebook, non-cube n, invalid spec, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed into a model object.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value requested in exact mode is irrational (e.g. involves sqrt(m) for non-square m).
class IrrationalValue : public Error {
 public:
  using Error::Error;
};

}  // namespace contractlab
