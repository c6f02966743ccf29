#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace bme {

// Arbitrary-precision non-negative integer. Everything in this library that
// can outgrow a machine word (function values, step counts, set codes) is a
// Nat; values stay non-negative by construction.
using Nat = boost::multiprecision::cpp_int;

inline Nat pow2(std::size_t k) { return Nat(1) << k; }

// Number of binary digits; 0 for 0.
inline std::size_t bit_length(const Nat& x) {
  return x.is_zero() ? 0u : static_cast<std::size_t>(boost::multiprecision::msb(x)) + 1u;
}

// Fuel for the budgeted evaluators.
//
// max_steps counts recursion-rule applications and is exact: an evaluation
// either finishes within the budget or reports exhaustion at the precise
// step where fuel ran out. max_value_bits is a guard rail against values too
// large to materialize; interrupt allows cooperative cancellation from a
// signal handler.
struct Budget {
  Nat max_steps{1000000};
  std::optional<Nat> max_value_bits{};
  const std::atomic<bool>* interrupt = nullptr;

  void require_valid() const {
    if (max_steps <= 0) {
      throw std::invalid_argument("budget: max_steps must be positive");
    }
  }

  bool interrupted() const {
    return interrupt != nullptr && interrupt->load(std::memory_order_relaxed);
  }
};

}  // namespace bme
