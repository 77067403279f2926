#pragma once

#include <stdexcept>
#include <string>

namespace sphqi {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction of a direction from a (near-)zero vector.
struct ZeroVector : Error {
  using Error::Error;
};

// Scalar argument outside the admissible interval.
struct DomainError : Error {
  using Error::Error;
};

// Harmonic degree/order index out of range.
struct IndexError : Error {
  using Error::Error;
};

// Evaluation point too close to a coordinate pole for the
// spherical-coordinate formulas used by the vector harmonics.
struct PoleProximity : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct NormError : Error {
  using Error::Error;
};

struct EmptyFile : Error {
  using Error::Error;
};

struct DuplicateScale : Error {
  using Error::Error;
};

struct NotSPD : Error {
  using Error::Error;
};

struct MissingPointSet : Error {
  using Error::Error;
};

}  // namespace sphqi
