#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hurwitz {

// Malformed input: group tables, permutation strings, setup documents, flags.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its state or memory budget. Counts are exact or
// absent, so this is never swallowed into a partial result.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t states_reached,
                 std::uint64_t frontier_size)
      : std::runtime_error(what + " (states reached: " +
                           std::to_string(states_reached) +
                           ", frontier: " + std::to_string(frontier_size) + ")"),
        states_reached_(states_reached),
        frontier_size_(frontier_size) {}

  std::uint64_t states_reached() const noexcept { return states_reached_; }
  std::uint64_t frontier_size() const noexcept { return frontier_size_; }

 private:
  std::uint64_t states_reached_;
  std::uint64_t frontier_size_;
};

// A cross-check between two independent routes disagreed. Always a bug or an
// inconsistent input, surfaced loudly.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hurwitz
