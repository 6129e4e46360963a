#pragma once

#include <stdexcept>
#include <string>

namespace confball {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method ran out of its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root could not be bracketed, which means the inputs are inconsistent.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis required by a closed-form bound does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries a 1-based row/column location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long row, long column)
      : std::runtime_error(what), row_(row), column_(column) {}
  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

}  // namespace confball
