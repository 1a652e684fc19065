#pragma once

#include <stdexcept>
#include <string>

namespace fqsl {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates a precondition (bad distribution,
/// infeasible coordinates, a point that is not a root, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not complete (e.g. a rejection sampler that
/// exceeded its attempt cap).
class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fqsl
