#pragma once

#include <stdexcept>
#include <string>

namespace faq {

/// Malformed input: out-of-range degrees, length or arity mismatch, bad shape parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its enumeration or memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace faq
