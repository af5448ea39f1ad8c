#pragma once
#include <stdexcept>
#include <string>

namespace flg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown ids, bad indices, out-of-range parameters.
struct InputError : Error {
  using Error::Error;
};

/// A client profile violates one of the feasibility conditions.
struct FeasibilityError : Error {
  using Error::Error;
};

/// Operation requires a mode the instance does not satisfy (e.g. unit weights).
struct UnsupportedError : Error {
  using Error::Error;
};

/// An exhaustive operation was asked to run beyond its micro-scale guard.
struct GuardError : Error {
  using Error::Error;
};

/// A proven invariant failed at runtime; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace flg
