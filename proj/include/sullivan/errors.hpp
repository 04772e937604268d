#pragma once

#include <stdexcept>
#include <string>

namespace sullivan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from incompatible generator universes, or malformed algebra data.
class AlgebraError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Something that cannot happen when the preconditions hold did happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  /// The same error with `context` (usually a file path) in front.
  static ParseError inContext(const std::string& context, const ParseError& e) {
    return ParseError(context + ": " + e.what(), e.line(), Raw{});
  }

  int line() const { return line_; }

 private:
  struct Raw {};
  ParseError(const std::string& full, int line, Raw) : Error(full), line_(line) {}

  int line_;
};

}  // namespace sullivan
