#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchfeas {

// Base of every error thrown by the library. The CLI maps UsageError and
// ParseError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (dimension mismatch, parameter out of range).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input the algorithm cannot handle, e.g. a zero column.
class DegenerateInputError : public Error {
 public:
  DegenerateInputError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Raised when a point is (or is not) in a cone contrary to what the
// operation requires.
class MembershipError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error("instance file field '" + field + "': " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace sketchfeas
