#ifndef UAVPATH_ERRORS_HPP_
#define UAVPATH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace uavpath {

/// Instance or config file that does not match its schema. The message
/// starts with the offending field path, e.g. "cells[3].risk: ...".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the exhaustive oracle and the LP exporter when an instance
/// exceeds the configured size caps. Never silently truncated.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a value object was violated (invalid chromosome,
/// malformed arc assignment, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace uavpath

#endif  // UAVPATH_ERRORS_HPP_
