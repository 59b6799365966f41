#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cg {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundVariable : Error {
  using Error::Error;
};

struct NotTriggered : Error {
  using Error::Error;
};

/// A configured cap (atoms, derivations, search states) was exceeded.
struct ResourceLimit : Error {
  using Error::Error;
};

struct NotPermutable : Error {
  using Error::Error;
};

struct SideConditionViolated : Error {
  using Error::Error;
};

struct UnknownTerm : Error {
  using Error::Error;
};

struct NotCycleFree : Error {
  using Error::Error;
};

struct InvalidRule : Error {
  using Error::Error;
};

/// Parse failure with a 1-based source position.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct ArityMismatch : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct EmptyBody : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct EmptyHead : SyntaxError {
  using SyntaxError::SyntaxError;
};

}  // namespace cg
