#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relalg {

// Base class for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Malformed or out-of-range input (bad variable index, pair outside the unit...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration would exceed its configured limit. `predicted` is
// the size the operation would have needed (saturated at UINT64_MAX).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t predicted, std::uint64_t budget)
      : Error(what + ": predicted size " + std::to_string(predicted) + " exceeds budget " +
              std::to_string(budget)),
        predicted_(predicted),
        budget_(budget) {}
  std::uint64_t predicted() const { return predicted_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t predicted_;
  std::uint64_t budget_;
};

// A construction invariant did not hold. `stage` names the pipeline step.
class PropertyViolation : public Error {
 public:
  PropertyViolation(const std::string& stage, const std::string& what)
      : Error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace relalg
