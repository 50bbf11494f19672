#pragma once

#include <stdexcept>
#include <string>

namespace chlink {

// Base class for all recoverable errors raised by the library.  The CLI maps
// anything derived from Error to a diagnostic plus exit code 2; any other
// exception escaping the library is a defect.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands built over different generator counts or truncation orders.
struct MismatchedContext : Error {
  using Error::Error;
};

// exp (and friends) require a vanishing constant term.
struct NonzeroConstantTerm : Error {
  using Error::Error;
};

// log / inverse require constant term exactly 1.
struct ConstantTermNotOne : Error {
  using Error::Error;
};

// assoc_to_lie applied to a series that is not primitive / not in the image
// of the free Lie algebra.
struct NotALieElement : Error {
  using Error::Error;
};

// Generator index outside 1..n.
struct IndexOutOfRange : Error {
  using Error::Error;
};

// Malformed input text (bad token, bad header, trailing garbage).
struct SyntaxError : Error {
  using Error::Error;
};

// String-link word whose underlying permutation is not the identity.
struct NotPure : Error {
  using Error::Error;
};

// Crossing/double position outside 1..m-1.
struct PositionOutOfRange : Error {
  using Error::Error;
};

// Operation defined only for non-singular words was given double points.
struct HasDoublePoints : Error {
  using Error::Error;
};

// Operation defined only for singular words was given none.
struct NoDoublePoints : Error {
  using Error::Error;
};

// chord_weight needs exactly s-1 double points.
struct WrongDoubleCount : Error {
  using Error::Error;
};

}  // namespace chlink
