#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aode {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ord/lowest coefficient requested for the zero element.
class UndefinedOrderError : public Error {
 public:
  UndefinedOrderError() : Error("order of the zero element is undefined") {}
};

/// No term of the input involves y or one of its derivatives.
class NotADifferentialEquationError : public Error {
 public:
  NotADifferentialEquationError()
      : Error("equation does not involve y or any of its derivatives") {}
};

/// The differential polynomial is identically zero.
class DegenerateEquationError : public Error {
 public:
  DegenerateEquationError() : Error("equation is identically zero") {}
};

/// An indicial polynomial that had to be nonzero is the zero polynomial.
class ZeroIndicialError : public Error {
 public:
  using Error::Error;
};

/// Polynomial solving was requested for a critical equation.
class CriticalEquationError : public Error {
 public:
  CriticalEquationError()
      : Error("equation is critical: the indicial polynomial at infinity is zero") {}
};

/// A configured resource limit (degree, unknown count, reduction steps) was hit.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments to a library call (mismatched lengths, reducible place, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Syntax or lowering error in the equation language; positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace aode
