#pragma once

#include <stdexcept>
#include <string>

namespace tracemetric {

// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of the requested operation (singular, not SPD,
// non-positive eigenvalue, off the unit-determinant slice, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An eigenvalue fell within tol_pd of zero.
class NearSingularError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative kernel did not converge within its sweep budget.
class IterationError : public Error {
 public:
  using Error::Error;
};

// Malformed arguments: shape mismatch, index out of range, degenerate plane.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A black-box map failed the post-identification probe.
class NotAnIsometryError : public Error {
 public:
  using Error::Error;
};

// The RK4 trajectory left the non-singular region.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix file or word specification.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tracemetric
