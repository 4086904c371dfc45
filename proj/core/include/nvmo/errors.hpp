#pragma once

#include <stdexcept>
#include <string>

namespace nvmo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A physical or numerical parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An input violated a documented precondition (e.g. non-Hermitian matrix
/// passed to the Hermitian eigensolver).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds what the dense path supports.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Time stepping lost trace, positivity or finiteness.
class IntegratorFailure : public Error {
 public:
  using Error::Error;
};

/// Fock-space cutoff too small for the populated states.
class TruncationGuardError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or CLI override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nvmo
