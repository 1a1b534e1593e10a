#pragma once

#include <stdexcept>
#include <string>

namespace spoamp {

/// Size or index mismatch between a state, a table, or a basis index.
class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid value for an operation: non-finite input, bad parameter range,
/// unsatisfiable precondition.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file; message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, long line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg), line_(0) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Invalid experiment configuration; message names the offending flag.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spoamp
