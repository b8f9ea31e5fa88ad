#pragma once

#include <stdexcept>
#include <string>

namespace slipball {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The local basis (e_r, e_theta, e_phi) is undefined on the polar axis.
class PoleDegeneracy : public Error {
 public:
  using Error::Error;
};

/// An operator with 1/r or 1/sin(theta) factors was asked to evaluate at r ~ 0
/// or sin(theta) ~ 0.
class CoordinateSingularity : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil would leave the admissible region.
class StencilOutOfDomain : public Error {
 public:
  using Error::Error;
};

/// No boundary point satisfies the non-vanishing conditions above threshold.
class NoWitness : public Error {
 public:
  using Error::Error;
};

/// The log-log fit of a scaling sweep cannot be formed.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (bad key, bad value, malformed document).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace slipball
