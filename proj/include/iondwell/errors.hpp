#pragma once

#include <stdexcept>

namespace iondwell {

/// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the physical domain (x <= 0, probability outside (0,1], ...).
struct DomainError : Error {
  using Error::Error;
};

/// The energy lies at or above the barrier maximum: over-the-barrier escape,
/// no tunneling geometry exists.
struct NoBarrierError : Error {
  using Error::Error;
};

/// An entrance turning point was found but the potential never drops back
/// below the energy inside the scan window. Signals a mis-configured window.
struct NoExitPointError : Error {
  using Error::Error;
};

/// Quadrature did not reach the requested tolerance within the panel cap.
struct ConvergenceError : Error {
  using Error::Error;
};

/// Malformed config or data file; the message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

} // namespace iondwell
