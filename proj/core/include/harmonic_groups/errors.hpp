#pragma once

#include <stdexcept>
#include <string>

namespace hg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element, matrix or config does not match the group or shape it is used with.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: weights not summing to one, non-symmetric generating sets, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (ball size, coordinate range, search radius) was hit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Too many random walks ran out of steps before hitting the subgroup.
class CensoringError : public Error {
 public:
  using Error::Error;
};

/// A word-length certificate could not be produced within the search radius.
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// The Abelian defect of a map grows with the probe radius.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A linear map that must be invertible is singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace hg
