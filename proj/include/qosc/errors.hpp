#pragma once

#include <stdexcept>

namespace qosc {

// Base for all library errors; lets callers map failures to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Series or iteration exhausted max_terms/max_iter before tolerance.
struct NoConvergence : Error {
  using Error::Error;
};

// Grid field does not decay at the boundary as the operator requires.
struct DecayViolation : Error {
  using Error::Error;
};

// Evaluation requested at an excluded (singular) point.
struct SingularityError : Error {
  using Error::Error;
};

// Scan bracket contains no sign change.
struct NoRoot : Error {
  using Error::Error;
};

// Characteristic map stays injective up to the configured horizon.
struct NoShock : Error {
  using Error::Error;
};

// A q-exponential factor of the action Hamiltonian vanished within tolerance.
struct SingularH : Error {
  using Error::Error;
};

// H(J) < 0 where a real square root is required.
struct NegativeH : DomainError {
  using DomainError::DomainError;
};

}  // namespace qosc
