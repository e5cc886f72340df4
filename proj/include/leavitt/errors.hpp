#pragma once

#include <stdexcept>
#include <string>

namespace leavitt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (path mismatch, field
/// mismatch, division by zero, incompatible module, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A decision procedure cannot certify its answer (e.g. irreducibility of a
/// rational polynomial of degree above 3).
class CannotCertify : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace leavitt
