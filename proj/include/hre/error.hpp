#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hre {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The input violates an operation's precondition (bad matrix, missing
/// references, unreachable concepts, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical method could not produce an acceptable result.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace hre
