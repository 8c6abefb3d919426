#pragma once

#include <stdexcept>
#include <string>

namespace msrd {

/// Base class for all library failures (violated preconditions, bad input).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration would exceed the configured work guard.
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& what) : Error(what) {}
};

/// A code file (or inline code text) could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace msrd
