#pragma once

#include <stdexcept>
#include <string>

namespace pkcol {

// Bad argument values (out-of-range colors, k = 0, mismatched sizes, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the inputs does not hold.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exhaustive enumeration would exceed the configured state cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The search node budget ran out before the status was determined.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAForest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracketing failed.
class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pkcol
