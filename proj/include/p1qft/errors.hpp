#pragma once

#include <stdexcept>
#include <string>

namespace p1qft {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated series was asked for a coefficient outside its known window.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (zero function,
/// coincident points, nonzero-degree charge, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Curve-model data is missing an entry or violates one of the model identities.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text. `position` is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace p1qft
