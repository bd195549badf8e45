#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x outside [0,1],
// index out of range, delta > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised by operations that need the strict regime n > 2r.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// (n+1)^d exceeds the configured term budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class DerivativeUnavailable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Expression references a variable x_i with i > d.
class ArityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An operation received an empty sweep, radius list or candidate set.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bsk
