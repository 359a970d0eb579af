#pragma once

#include <stdexcept>
#include <string>

namespace spinham {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Requested dimension is outside the supported range (e.g. 2S+1 > 16).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Input violates a documented precondition of an operation.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Input contradicts the time-reversal structure an algorithm relies on
/// (odd-dimensional Kramers space, wrong parity for the requested construction).
class StructuralError : public Error {
public:
  using Error::Error;
};

/// A projection loop ran out of candidates before reaching the expected rank.
class RankError : public Error {
public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// The Zeeman matrices are not of the form (1/2c) g_uv S_v.
class ModelViolation : public Error {
public:
  using Error::Error;
};

/// Two procedures that must agree produced different answers.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace spinham
