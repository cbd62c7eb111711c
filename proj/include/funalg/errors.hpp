#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace funalg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A partial codec (unpair, seq_decode, base_unpair, ...) applied outside its domain.
class CodecError : public Error {
 public:
  using Error::Error;
};

/// Malformed text. `offset` is a byte offset; line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0,
             std::size_t column = 0)
      : Error(what), offset_(offset), line_(line), column_(column) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

/// A derivation uses an operator outside the requested algebra class.
class ClassError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  enum class Kind { Steps, Bits };
  BudgetExceeded(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

/// Recursive call whose argument is not below the caller's argument.
class MeasureViolation : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Clause set not obtainable by the refinement rules.
class RefinementError : public Error {
 public:
  using Error::Error;
};

/// Violation of the measure / parameterization restrictions on recursive definitions.
class RestrictionError : public Error {
 public:
  using Error::Error;
};

class CompileError : public Error {
 public:
  using Error::Error;
};

/// PR, E or Smash found where a polynomial bound is required.
class UnboundedOperator : public Error {
 public:
  using Error::Error;
};

/// A characteristic function returned something other than 0 or 1.
class PredicateViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace funalg
