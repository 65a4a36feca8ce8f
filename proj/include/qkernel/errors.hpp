#pragma once

#include <stdexcept>
#include <string>

namespace qk {

/// Raised when an input violates an operation's precondition. The message
/// names the offending object (arc, vertex, set).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a constructed set fails its own post-check. Always a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed textual input, with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qk

namespace qk {

/// A family, target or mode name that is not registered.
class UnknownNameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qk
