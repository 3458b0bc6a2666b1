#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmmp {

/// Malformed or inconsistent input (unknown vertex, index mismatch, bad number).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but a hypothesis the operation relies on fails.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exhaustive enumeration would exceed its budget. Enumerations refuse
/// rather than sample.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + " (required " + std::to_string(required) + ", budget " +
                           std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace qmmp
