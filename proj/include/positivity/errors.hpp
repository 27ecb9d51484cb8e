#pragma once

#include <stdexcept>
#include <string>

namespace positivity {

/// Malformed or out-of-contract input (bad domain, point outside D, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or unsupported geometry: self-intersecting polygon, collapsed
/// offset, overlapping tube.
class GeometryError : public InputError {
 public:
  using InputError::InputError;
};

/// The measure-equality case |D| = pi (j_{0,1}/k)^2 of the compact-set
/// pipeline, which would require an eigenfunction solver.
class DegenerateCase : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace positivity
