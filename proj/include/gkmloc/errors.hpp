#pragma once

#include <stdexcept>
#include <string>

namespace gkmloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A denominator weight vanishes at the evaluation point.
class SingularEvaluationError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Some weight has zero real part on the chosen slice, so no chamber
/// (and no Bialynicki-Birula decomposition) is defined.
class OnWallError : public Error {
 public:
  using Error::Error;
};

/// Repeated coordinate weights: torus fixed points would not be isolated.
class DegenerateActionError : public Error {
 public:
  using Error::Error;
};

class InconsistentSheafError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSheafError : public Error {
 public:
  using Error::Error;
};

class IncompatibleStratificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gkmloc
