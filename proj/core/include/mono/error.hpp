#pragma once

#include <stdexcept>
#include <string>

namespace mono {

// Base for every error the library reports. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (pattern files, hypergraph dumps, configs, CSV).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request is well-formed but exceeds what an exhaustive method will attempt.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace mono
