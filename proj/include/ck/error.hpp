#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands come from different polynomial rings.
class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands live in different rings") {}
};

/// A Gröbner computation ran out of S-pair reductions. Callers turn this into
/// an inconclusive verdict; it never means "false".
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t steps, std::size_t partial_basis, std::size_t pending_pairs)
      : Error("Groebner step budget exceeded after " + std::to_string(steps) + " steps"),
        steps_(steps),
        partial_basis_(partial_basis),
        pending_pairs_(pending_pairs) {}

  std::size_t steps() const { return steps_; }
  std::size_t partial_basis_size() const { return partial_basis_; }
  std::size_t pending_pairs() const { return pending_pairs_; }

 private:
  std::size_t steps_;
  std::size_t partial_basis_;
  std::size_t pending_pairs_;
};

/// Input text could not be parsed; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ck
