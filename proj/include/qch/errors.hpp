#pragma once

#include <stdexcept>
#include <string>

namespace qch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the range an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Some derivative vector of a curve is (numerically) zero.
class RegularityError : public Error {
 public:
  using Error::Error;
};

/// The sampled curve intersects itself.
class InjectivityError : public Error {
 public:
  using Error::Error;
};

/// The discretisation is too coarse for the requested quantity.
class RefinementRequired : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure failed to reach its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Gradient frame of rank <= 1 (branch point).
class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

/// Boundary data spans no area / no length.
class DegenerateSurface : public Error {
 public:
  using Error::Error;
};

/// Evaluation point too close to the unit circle for the fixed quadrature.
class NearBoundaryError : public Error {
 public:
  using Error::Error;
};

/// A quantity that is nonnegative in exact arithmetic came out clearly negative.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed command line or configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A serialized report does not match its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qch
