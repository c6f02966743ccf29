#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bme/natural.hpp"
#include "bme/ordinal.hpp"
#include "bme/outcome.hpp"

namespace bme {

// Budgeted evaluator for the fast-growing hierarchy
//
//   f_0(n)     = n + 1
//   f_{b+1}(n) = f_b^n(n)      (n-fold iteration; the 0-fold iteration is n)
//   f_l(n)     = f_{l[n]}(n)   (l a limit, l[n] its fundamental sequence)
//
// Evaluation runs on an explicit work stack of (index, repetition) runs, so
// no host recursion is involved and arbitrarily deep unfoldings are fine.
// One budget step is charged per rule application. Runs of index 0 and 1
// are applied in bulk (a run of k zero-rules adds k for k steps; a run of k
// one-rules multiplies by 2^k for k + cur*(2^k - 1) steps), which keeps
// values like f_3(3) reachable; the step accounting is identical to the
// one-at-a-time machine, so exhaustion points are reproducible.

namespace detail {

struct FghRun {
  Ordinal index;
  Nat count;
};

inline void fgh_push_run(std::vector<FghRun>& stack, Ordinal index, Nat count) {
  if (count == 0) return;
  if (!stack.empty() && stack.back().index == index) {
    stack.back().count += count;
  } else {
    stack.push_back(FghRun{std::move(index), std::move(count)});
  }
}

inline Ordinal fgh_deepest(const std::vector<FghRun>& stack) {
  Ordinal deepest;
  for (const FghRun& r : stack) {
    if (r.index > deepest) deepest = r.index;
  }
  return deepest;
}

}  // namespace detail

inline EvalOutcome fgh_eval(const Ordinal& alpha, const Nat& n, const Budget& budget) {
  budget.require_valid();
  const Ordinal one = Ordinal::from_nat(1);
  Nat cur = n;
  Nat steps = 0;
  Nat left = budget.max_steps;
  std::vector<detail::FghRun> stack;
  stack.push_back(detail::FghRun{alpha, Nat(1)});

  auto exhaust = [&](ExhaustionReason reason) {
    return EvalOutcome::of_exhaustion(Exhausted{steps, detail::fgh_deepest(stack), reason});
  };
  auto value_too_big = [&]() {
    return budget.max_value_bits && Nat(bit_length(cur)) > *budget.max_value_bits;
  };
  // cost of applying the f_1 rule j times to cur > 0: j + cur*(2^j - 1)
  auto one_run_cost = [&](std::size_t j) { return Nat(j) + cur * (pow2(j) - 1); };

  if (value_too_big()) return exhaust(ExhaustionReason::value_bits);
  while (!stack.empty()) {
    if (budget.interrupted()) return exhaust(ExhaustionReason::interrupted);
    const std::size_t top = stack.size() - 1;
    const OrdinalKind kind = stack[top].index.kind();

    if (stack[top].index.is_zero()) {
      // k applications of f_0: cur += k, k steps.
      const Nat k = stack[top].count;
      if (k <= left) {
        steps += k;
        left -= k;
        cur += k;
        stack.pop_back();
      } else {
        cur += left;
        steps += left;
        stack[top].count = k - left;
        left = 0;
        return exhaust(ExhaustionReason::steps);
      }
      if (value_too_big()) return exhaust(ExhaustionReason::value_bits);
      continue;
    }

    if (stack[top].index == one) {
      const Nat k = stack[top].count;
      if (cur == 0) {
        // f_1(0) = 0: each application costs one step and changes nothing.
        if (k <= left) {
          steps += k;
          left -= k;
          stack.pop_back();
        } else {
          steps += left;
          stack[top].count = k - left;
          left = 0;
          return exhaust(ExhaustionReason::steps);
        }
        continue;
      }
      // Largest j <= k affordable in both steps and value bits. An affordable
      // j satisfies cur*(2^j - 1) <= left, hence j <= bits(left) - bits(cur) + 2,
      // so starting the downward search there keeps the number of exact cost
      // evaluations constant.
      const std::size_t cur_bits = bit_length(cur);
      const std::size_t left_bits = bit_length(left);
      Nat ub = k;
      const Nat step_ub = Nat(left_bits > cur_bits ? left_bits - cur_bits : 0) + 2;
      if (step_ub < ub) ub = step_ub;
      if (budget.max_value_bits) {
        const Nat value_ub = *budget.max_value_bits > Nat(cur_bits)
                                 ? *budget.max_value_bits - Nat(cur_bits)
                                 : Nat(0);
        if (value_ub < ub) ub = value_ub;
      }
      std::size_t j = static_cast<std::size_t>(ub);  // ub <= bits(left) + 2 fits
      while (j > 0 && one_run_cost(j) > left) --j;
      if (j > 0) {
        const Nat cost = one_run_cost(j);
        steps += cost;
        left -= cost;
        cur <<= j;
        stack[top].count = k - j;
        if (stack[top].count == 0) {
          stack.pop_back();
          continue;
        }
      }
      // The next application does not fit. Decide which cap it hits.
      if (left == 0) return exhaust(ExhaustionReason::steps);
      if (left < cur + 1) {
        // One more f_1 rule fires, then its zero-run runs out of fuel.
        steps += 1;
        left -= 1;
        stack[top].count -= 1;
        const Nat remainder = cur - left;
        cur += left;
        steps += left;
        left = 0;
        detail::fgh_push_run(stack, Ordinal::zero(), remainder);
        return exhaust(ExhaustionReason::steps);
      }
      // Budget would allow it, so the value cap stopped the bulk run: apply
      // the first offending application, then report.
      steps += cur + 1;
      left -= cur + 1;
      stack[top].count -= 1;
      if (stack[top].count == 0) stack.pop_back();
      cur <<= 1;
      return exhaust(ExhaustionReason::value_bits);
    }

    // Successor or limit index: one rule application.
    if (left == 0) return exhaust(ExhaustionReason::steps);
    steps += 1;
    left -= 1;
    Ordinal index = stack[top].index;
    stack[top].count -= 1;
    if (stack[top].count == 0) stack.pop_back();
    if (kind == OrdinalKind::successor) {
      if (cur > 0) detail::fgh_push_run(stack, index.pred(), cur);
    } else {
      detail::fgh_push_run(stack, index.fundamental_sequence(cur), Nat(1));
    }
  }
  return EvalOutcome::of_value(cur, steps);
}

// The (index, argument) pairs visited by the outermost expansion, one per
// rule application, in evaluation order. Replaying the three rules over the
// trace reproduces fgh_eval's answer; the budget caps the trace length.
struct FghTrace {
  std::vector<std::pair<Ordinal, Nat>> visited;
  EvalOutcome outcome;
};

inline FghTrace fgh_trace(const Ordinal& alpha, const Nat& n, const Budget& budget) {
  budget.require_valid();
  FghTrace trace;
  Nat cur = n;
  Nat steps = 0;
  Nat left = budget.max_steps;
  std::vector<detail::FghRun> stack;
  stack.push_back(detail::FghRun{alpha, Nat(1)});

  auto exhaust = [&](ExhaustionReason reason) {
    trace.outcome =
        EvalOutcome::of_exhaustion(Exhausted{steps, detail::fgh_deepest(stack), reason});
  };

  while (!stack.empty()) {
    if (budget.interrupted()) {
      exhaust(ExhaustionReason::interrupted);
      return trace;
    }
    if (left == 0) {
      exhaust(ExhaustionReason::steps);
      return trace;
    }
    const std::size_t top = stack.size() - 1;
    Ordinal index = stack[top].index;
    stack[top].count -= 1;
    if (stack[top].count == 0) stack.pop_back();
    trace.visited.emplace_back(index, cur);
    steps += 1;
    left -= 1;
    switch (index.kind()) {
      case OrdinalKind::zero:
        cur += 1;
        break;
      case OrdinalKind::successor:
        if (cur > 0) detail::fgh_push_run(stack, index.pred(), cur);
        break;
      case OrdinalKind::limit:
        detail::fgh_push_run(stack, index.fundamental_sequence(cur), Nat(1));
        break;
    }
    if (budget.max_value_bits && Nat(bit_length(cur)) > *budget.max_value_bits) {
      exhaust(ExhaustionReason::value_bits);
      return trace;
    }
  }
  trace.outcome = EvalOutcome::of_value(cur, steps);
  return trace;
}

}  // namespace bme
