#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "bme/natural.hpp"
#include "bme/ordinal.hpp"

namespace bme {

enum class ExhaustionReason { steps, value_bits, interrupted };

inline const char* to_string(ExhaustionReason r) {
  switch (r) {
    case ExhaustionReason::steps: return "steps";
    case ExhaustionReason::value_bits: return "value-bits";
    case ExhaustionReason::interrupted: return "interrupted";
  }
  return "?";
}

struct Exhausted {
  Nat steps_used;
  Ordinal deepest_index;  // largest index still pending when fuel ran out
  ExhaustionReason reason = ExhaustionReason::steps;
};

// Result of a budgeted evaluation: either a value or an exhaustion report.
// Exhaustion is an explicit outcome, never a silent truncation.
class EvalOutcome {
 public:
  static EvalOutcome of_value(Nat v, Nat steps) {
    EvalOutcome o;
    o.has_value_ = true;
    o.value_ = std::move(v);
    o.steps_used_ = std::move(steps);
    return o;
  }

  static EvalOutcome of_exhaustion(Exhausted e) {
    EvalOutcome o;
    o.has_value_ = false;
    o.steps_used_ = e.steps_used;
    o.exhausted_ = std::move(e);
    return o;
  }

  bool ok() const { return has_value_; }
  explicit operator bool() const { return has_value_; }

  const Nat& value() const {
    if (!has_value_) throw std::logic_error("EvalOutcome: no value (exhausted)");
    return value_;
  }

  const Exhausted& exhaustion() const {
    if (has_value_) throw std::logic_error("EvalOutcome: not exhausted");
    return exhausted_;
  }

  const Nat& steps_used() const { return steps_used_; }

 private:
  bool has_value_ = false;
  Nat value_;
  Nat steps_used_;
  Exhausted exhausted_;
};

}  // namespace bme
