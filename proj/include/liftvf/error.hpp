#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liftvf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position()` is the 0-based offset of the
/// offending character.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// Operands live in different rings, or an index is out of range.
class RingError : public Error {
  public:
    using Error::Error;
};

/// Input document or germ violates a structural requirement
/// (schema, constant terms, n > p, corank > 1, ...).
class InputError : public Error {
  public:
    using Error::Error;
};

/// delta(f) did not stabilize within the search bound.
class InfiniteDeltaError : public InputError {
  public:
    using InputError::InputError;
};

/// A truncation order is too small for a sound rank computation.
class TruncationError : public Error {
  public:
    using Error::Error;
};

/// A mathematical precondition of an operation is not met
/// (no bijective level, surjectivity hypothesis fails, unsolvable system).
class HypothesisError : public Error {
  public:
    using Error::Error;
};

} // namespace liftvf
