#pragma once

#include <stdexcept>
#include <string>

namespace lpmkit {

// Base class for all lpmkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument value (out-of-range ratio, empty input where forbidden, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Index or prefix length outside the valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the offending source name and line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, long line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  long line() const { return line_; }

 private:
  std::string source_;
  long line_;
};

// Operation not allowed in the current state (e.g. firing a disabled transition).
class StateError : public Error {
 public:
  using Error::Error;
};

// Exploration or evaluation budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// No alignment reaches the final marking under the restricted move set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpmkit
