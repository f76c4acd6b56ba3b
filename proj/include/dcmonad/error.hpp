#pragma once

#include <stdexcept>
#include <string>

namespace dcmonad {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boundary mismatch when composing arrows or squares.
class CompositionError : public Error {
 public:
  using Error::Error;
};

class PastingError : public Error {
 public:
  PastingError(std::size_t row, std::size_t column, const std::string& what)
      : Error("pasting error at row " + std::to_string(row) + ", cell " +
              std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class CapabilityError : public Error {
 public:
  explicit CapabilityError(const std::string& capability)
      : Error("instance lacks capability: " + capability),
        capability_(capability) {}

  const std::string& capability() const noexcept { return capability_; }

 private:
  std::string capability_;
};

// A free construction was truncated and cannot be used where a monad is required.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Exhaustive searches refuse inputs past their desk-scale bound.
class SearchLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace dcmonad
