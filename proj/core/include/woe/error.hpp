#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace woe {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A quantity that is not defined for the given inputs (zero cells, degenerate events).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// A case or schema does not belong to the knowledge base it is used with.
class DigestMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace woe
