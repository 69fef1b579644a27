#pragma once

#include <stdexcept>
#include <string>

namespace fo2sp {

// Raised by the text-format readers. Positions are 1-based; 0 means the
// location is not attributable to a single point in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    std::string where = "line " + std::to_string(line);
    if (column > 0) where += ", column " + std::to_string(column);
    return where + ": " + message;
  }

  int line_;
  int column_;
};

// A transition was applied to a configuration it does not fire from:
// wrong state, dec on a zero counter, or ifz on a nonzero counter.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation hit a variable with no binding in the assignment.
class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An element id that is not part of the structure's universe.
class UnknownElement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The machine's counters cannot be mapped onto the blue/red pair.
class UnsupportedCounters : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The machine has no transitions; the compiled sentence would be degenerate.
class TrivialMachine : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { NoTag, AmbiguousTag, SingleClass };

  DecodeError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace fo2sp
