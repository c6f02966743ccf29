#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bme/natural.hpp"
#include "bme/ordinal.hpp"
#include "bme/outcome.hpp"
#include "bme/pairing.hpp"

namespace bme {

// Memoized evaluator for the Ackermann-Peter function
//
//   A(0, n)   = n + 1
//   A(m, 0)   = A(m-1, 1)
//   A(m, n)   = A(m-1, A(m, n-1))
//
// driven by an explicit frame stack (A(3,.) alone would blow the host call
// stack). One budget step per recursion-rule application; memoized hits are
// free. The memo table persists across eval() calls on the same session, so
// a session is the unit of confinement: share sessions within one thread
// only.
class AckSession {
 public:
  using Memo = std::map<std::pair<Nat, Nat>, Nat>;

  EvalOutcome eval(const Nat& m, const Nat& n, const Budget& budget) {
    budget.require_valid();
    enum class State { expand, await_final, await_inner };
    struct Frame {
      Nat m, n;
      State state;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{m, n, State::expand});
    Nat steps = 0;
    Nat left = budget.max_steps;
    std::optional<Nat> retval;

    auto exhaust = [&](ExhaustionReason reason) {
      Nat deepest = 0;
      for (const Frame& f : stack) {
        if (f.m > deepest) deepest = f.m;
      }
      steps_used_ += steps;
      return EvalOutcome::of_exhaustion(
          Exhausted{steps, Ordinal::from_nat(deepest), reason});
    };

    while (!stack.empty()) {
      Frame& f = stack.back();
      switch (f.state) {
        case State::expand: {
          if (auto it = memo_.find({f.m, f.n}); it != memo_.end()) {
            retval = it->second;
            stack.pop_back();
            continue;
          }
          if (budget.interrupted()) return exhaust(ExhaustionReason::interrupted);
          if (left == 0) return exhaust(ExhaustionReason::steps);
          steps += 1;
          left -= 1;
          if (f.m == 0) {
            Nat v = f.n + 1;
            if (budget.max_value_bits && Nat(bit_length(v)) > *budget.max_value_bits) {
              return exhaust(ExhaustionReason::value_bits);
            }
            memo_.emplace(std::make_pair(f.m, f.n), v);
            retval = std::move(v);
            stack.pop_back();
            continue;
          }
          if (f.n == 0) {
            f.state = State::await_final;
            Nat inner_m = f.m - 1;
            stack.push_back(Frame{std::move(inner_m), Nat(1), State::expand});
            continue;
          }
          f.state = State::await_inner;
          Nat mm = f.m;
          Nat inner_n = f.n - 1;
          stack.push_back(Frame{std::move(mm), std::move(inner_n), State::expand});
          continue;
        }
        case State::await_inner: {
          // retval holds A(m, n-1); now compute A(m-1, retval).
          f.state = State::await_final;
          Nat inner_m = f.m - 1;
          Nat inner_n = *retval;
          retval.reset();
          stack.push_back(Frame{std::move(inner_m), std::move(inner_n), State::expand});
          continue;
        }
        case State::await_final: {
          memo_.emplace(std::make_pair(f.m, f.n), *retval);
          stack.pop_back();  // retval propagates to the caller frame
          continue;
        }
      }
    }
    steps_used_ += steps;
    return EvalOutcome::of_value(*retval, steps);
  }

  const Memo& table() const { return memo_; }
  const Nat& steps_used() const { return steps_used_; }

 private:
  Memo memo_;
  Nat steps_used_ = 0;
};

// One-shot evaluation with a fresh memo.
inline EvalOutcome ack(const Nat& m, const Nat& n, const Budget& budget) {
  AckSession session;
  return session.eval(m, n, budget);
}

// A'(x) = <A((x)_0, (x)_1), A((x)_0, (x)_1)>, the pairing-compressed variant
// that carries both Ackermann parameters through one argument.
inline EvalOutcome ack_prime(const Nat& x, const Budget& budget, AckSession* session = nullptr) {
  const auto [m, n] = cantor_unpair(x);
  AckSession local;
  AckSession& s = session ? *session : local;
  EvalOutcome inner = s.eval(m, n, budget);
  if (!inner.ok()) return inner;
  return EvalOutcome::of_value(cantor_pair(inner.value(), inner.value()), inner.steps_used());
}

}  // namespace bme
