#pragma once

#include <stdexcept>
#include <string>

namespace susy {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time or coordinate lies outside the domain where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step-size control failed to converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The Wronskian of the auxiliary solution vanishes.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The auxiliary solution lives on the non-normalizable branch (Im W > 0),
/// or has not been normalized to W = -2i.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Requested state would be singular at the origin (m > 0 ground state).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced non-finite values.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace susy
