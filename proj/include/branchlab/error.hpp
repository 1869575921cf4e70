#pragma once

#include <stdexcept>
#include <string>

namespace branchlab {

// Malformed input: bad prime, bad vector, unparseable word, out-of-range letter.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A configured budget (state cap, degree cap, element cap) was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Something that is a theorem for GGS inputs failed to hold; indicates an engine bug.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace branchlab
