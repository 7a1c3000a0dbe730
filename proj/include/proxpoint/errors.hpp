#pragma once

#include <stdexcept>
#include <string>

#include "proxpoint/types.hpp"

namespace proxpoint {

// Bad caller input: wrong dimension, non-positive step, malformed schedule.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A promise the library itself was supposed to keep was broken.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an inner solve needs more iterations than allowed.
// Carries the last iterate so callers can still report something.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, Vector best, std::int64_t required, std::int64_t allowed)
      : std::runtime_error(what), best_(std::move(best)), required_(required), allowed_(allowed) {}
  const Vector& best() const { return best_; }
  std::int64_t required() const { return required_; }
  std::int64_t allowed() const { return allowed_; }

 private:
  Vector best_;
  std::int64_t required_;
  std::int64_t allowed_;
};

}  // namespace proxpoint
