#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace turanlab {

// Error taxonomy shared by every module. The CLI maps these onto exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Point outside the analytic domain of a representation (sigma <= 1 for a
// Dirichlet series, s = 1 for the pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// The ingested data does not reach far enough (zero table too short, sieve
// limit too small).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to meet its own accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace turanlab
