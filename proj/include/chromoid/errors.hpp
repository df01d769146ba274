#pragma once

#include <stdexcept>
#include <string>

namespace chromoid {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dangling ids, unknown names, size mismatches.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// A file could not be parsed or is semantically invalid.
class FormatError : public Error {
public:
  using Error::Error;
};

/// A resource guard refused to build an instance.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// An internal invariant that the theory guarantees did not hold. On valid
/// input this signals a bug; otherwise it signals corrupted input.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace chromoid
