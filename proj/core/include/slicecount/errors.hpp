#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slicecount {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line and column are 1-based; 0 means unknown. what()
// reads "source:line:column: message" with unknown parts left out.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0,
             const std::string& source = "");
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The text without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// A configured cap (states, elements, enumeration size) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Cross-check against the oracle failed.
class AuditError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicecount
