#pragma once

#include <stdexcept>
#include <string>

namespace randgrp {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range letters, rank mismatches, bad weights,
/// composite moduli, parse failures.
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// A multiplication table that is not a group (reports the first violation).
class StructureError : public Error {
public:
  using Error::Error;
};

/// A configured size cap was exceeded (group order, tuple enumeration, ...).
class CapacityError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its stated precondition
/// (e.g. period() on a reducible chain).
class PreconditionError : public Error {
public:
  using Error::Error;
};

} // namespace randgrp
