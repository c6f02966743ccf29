#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bme/natural.hpp"
#include "bme/pairing.hpp"

namespace bme {

// Finite sequences of naturals, the nodes of enumerated trees. Entries are
// machine words: they label tree children, and a stage with more than 2^64
// children is not materializable anyway. The big-integer story lives in the
// codes, not the labels.
using Entry = std::uint64_t;
using Seq = std::vector<Entry>;

inline bool is_prefix(const Seq& a, const Seq& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline bool is_proper_prefix(const Seq& a, const Seq& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline std::string seq_to_string(const Seq& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + ">";
}

// Code of a sequence: the binary-characteristic set code of its Cantor-paired
// (position, entry) pairs. Injective, and every paired entry is <= the code.
inline Nat seq_code(const Seq& s) {
  std::vector<Nat> pairs;
  pairs.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    pairs.push_back(cantor_pair(Nat(i), Nat(s[i])));
  }
  return set_code(std::move(pairs));
}

// One stage of an enumeration: the set of sequences newly enumerated at
// stage `index`. Cumulatively E[s] is the union of new_elements over all
// stages with index <= s.
struct Stage {
  Nat index;
  std::vector<Seq> new_elements;

  void normalize() {
    std::sort(new_elements.begin(), new_elements.end());
    new_elements.erase(std::unique(new_elements.begin(), new_elements.end()),
                       new_elements.end());
  }
};

// A monotone-enumeration candidate: an ordered list of stages. Construction
// enforces the representation invariants (strictly increasing stage indices,
// stage sets disjoint across stages); whether the result actually is a
// monotone enumeration is what validate() decides.
class Enumeration {
 public:
  Enumeration() = default;

  explicit Enumeration(std::vector<Stage> stages) : stages_(std::move(stages)) {
    for (Stage& st : stages_) st.normalize();
    for (std::size_t i = 1; i < stages_.size(); ++i) {
      if (!(stages_[i - 1].index < stages_[i].index)) {
        throw std::invalid_argument("enumeration: stage indices must increase strictly");
      }
    }
    for (std::size_t i = 0; i < stages_.size(); ++i) {
      for (const Seq& s : stages_[i].new_elements) {
        for (std::size_t j = i + 1; j < stages_.size(); ++j) {
          const auto& later = stages_[j].new_elements;
          if (std::binary_search(later.begin(), later.end(), s)) {
            throw std::invalid_argument("enumeration: " + seq_to_string(s) +
                                        " enumerated at two stages");
          }
        }
      }
    }
  }

  std::span<const Stage> stages() const { return stages_; }
  bool empty() const { return stages_.empty(); }

  bool enumerates(const Seq& s) const {
    for (const Stage& st : stages_) {
      if (std::binary_search(st.new_elements.begin(), st.new_elements.end(), s)) return true;
    }
    return false;
  }

  // All enumerated sequences in (stage, within-stage) order.
  std::vector<Seq> all_elements() const {
    std::vector<Seq> out;
    for (const Stage& st : stages_) {
      out.insert(out.end(), st.new_elements.begin(), st.new_elements.end());
    }
    return out;
  }

 private:
  std::vector<Stage> stages_;
};

enum class Condition { C1, C2, C3a, C3b };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3a: return "C3a";
    case Condition::C3b: return "C3b";
  }
  return "?";
}

struct Violation {
  Condition condition;
  Nat stage;
  Seq witness;
  std::optional<Seq> tau0;
  std::optional<Nat> prior_stage;  // stage that enumerated tau0
  std::optional<Seq> offender;

  std::string describe() const {
    std::string out = std::string(to_string(condition)) + " at stage " + stage.str() +
                      ", witness " + seq_to_string(witness);
    if (tau0) out += ", tau0 " + seq_to_string(*tau0);
    if (prior_stage) out += " (enumerated at stage " + prior_stage->str() + ")";
    if (offender) out += ", offender " + seq_to_string(*offender);
    return out;
  }
};

// Checks the monotone-enumeration conditions over any indexable list of
// stages and returns the first violation in stage order (within a stage:
// sequences in canonical order, condition (a) before (b)).
//
//   C1: the empty sequence is enumerated at the first stage.
//   C2: every stage is finite (structural for this representation).
//   C3: for tau newly enumerated at a later stage s, with tau0 the longest
//       proper initial segment of tau enumerated at a prior stage,
//       (a) no proper extension of tau0 was enumerated before s, and
//       (b) every sequence newly enumerated at s extends tau0.
//
// Stages must be normalized and duplicate-free across stages (as Enumeration
// guarantees).
template <class GetStage>
std::optional<Violation> validate_stages(std::size_t count, GetStage&& stage_at) {
  const Seq root{};
  if (count == 0) {
    return Violation{Condition::C1, Nat(0), root, std::nullopt, std::nullopt, std::nullopt};
  }
  {
    const Stage& first = stage_at(0);
    if (!std::binary_search(first.new_elements.begin(), first.new_elements.end(), root)) {
      return Violation{Condition::C1, first.index, root, std::nullopt, std::nullopt,
                       std::nullopt};
    }
  }
  // C2 holds structurally: new_elements is a finite vector.
  struct Prior {
    const Seq* seq;
    const Nat* stage_index;
  };
  std::vector<Prior> prior;
  for (std::size_t si = 0; si < count; ++si) {
    const Stage& st = stage_at(si);
    if (si > 0) {
      for (const Seq& tau : st.new_elements) {
        const Prior* best = nullptr;
        for (const Prior& p : prior) {
          if (is_proper_prefix(*p.seq, tau) &&
              (best == nullptr || p.seq->size() > best->seq->size())) {
            best = &p;
          }
        }
        if (best == nullptr) {
          throw std::logic_error("validate: duplicate of an enumerated sequence");
        }
        const Seq& tau0 = *best->seq;
        for (const Prior& p : prior) {
          if (is_proper_prefix(tau0, *p.seq)) {
            return Violation{Condition::C3a, st.index, tau, tau0, *best->stage_index, *p.seq};
          }
        }
        for (const Seq& sigma : st.new_elements) {
          if (!is_prefix(tau0, sigma)) {
            return Violation{Condition::C3b, st.index, tau, tau0, *best->stage_index, sigma};
          }
        }
      }
    }
    for (const Seq& s : st.new_elements) {
      prior.push_back(Prior{&s, &st.index});
    }
  }
  return std::nullopt;
}

inline std::optional<Violation> validate(std::span<const Stage> stages) {
  return validate_stages(stages.size(), [&](std::size_t i) -> const Stage& { return stages[i]; });
}

inline std::optional<Violation> validate(const Enumeration& e) { return validate(e.stages()); }

namespace detail {

inline void require_valid_enumeration(const Enumeration& e, const char* op) {
  if (auto v = validate(e)) {
    throw std::invalid_argument(std::string(op) + ": not a monotone enumeration (" +
                                v->describe() + ")");
  }
}

}  // namespace detail

// The tree enumerated by e: the prefix closure of all enumerated sequences
// (each node is included together with every initial segment of it).
struct EnumTree {
  std::vector<Seq> nodes;  // sorted

  bool contains(const Seq& s) const {
    return std::binary_search(nodes.begin(), nodes.end(), s);
  }
  std::size_t size() const { return nodes.size(); }
};

inline EnumTree tree_of_elements(const std::vector<Seq>& elements) {
  EnumTree tree;
  for (const Seq& s : elements) {
    for (std::size_t len = 0; len <= s.size(); ++len) {
      tree.nodes.emplace_back(s.begin(), s.begin() + len);
    }
  }
  std::sort(tree.nodes.begin(), tree.nodes.end());
  tree.nodes.erase(std::unique(tree.nodes.begin(), tree.nodes.end()), tree.nodes.end());
  return tree;
}

inline EnumTree tree_of(const Enumeration& e) {
  detail::require_valid_enumeration(e, "tree_of");
  return tree_of_elements(e.all_elements());
}

namespace detail {

inline std::optional<Nat> stage_index_of(const Enumeration& e, const Seq& tau) {
  for (const Stage& st : e.stages()) {
    if (std::binary_search(st.new_elements.begin(), st.new_elements.end(), tau)) {
      return st.index;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// The stage-by-stage sequence of tau: the chain of successively longer
// maximal initial segments of tau enumerated at stages strictly before
// tau's own stage, ordered by stage, followed by tau itself.
inline std::vector<Seq> stage_by_stage(const Enumeration& e, const Seq& tau) {
  detail::require_valid_enumeration(e, "stage_by_stage");
  auto tau_stage = detail::stage_index_of(e, tau);
  if (!tau_stage) {
    throw std::invalid_argument("stage_by_stage: " + seq_to_string(tau) + " is not enumerated");
  }
  std::vector<Seq> chain;
  std::size_t best_len_plus_one = 0;
  for (const Stage& st : e.stages()) {
    if (!(st.index < *tau_stage)) break;
    const Seq* stage_best = nullptr;
    for (const Seq& s : st.new_elements) {
      if (is_prefix(s, tau) && (stage_best == nullptr || s.size() > stage_best->size())) {
        stage_best = &s;
      }
    }
    if (stage_best != nullptr && stage_best->size() + 1 > best_len_plus_one) {
      best_len_plus_one = stage_best->size() + 1;
      chain.push_back(*stage_best);
    }
  }
  chain.push_back(tau);
  return chain;
}

// Bounded by b: every enumerated sequence has a stage-by-stage sequence of
// length at most b. Returns the first counterexample, or nullopt if bounded.
inline std::optional<Seq> boundedness_witness(const Enumeration& e, const Nat& b) {
  detail::require_valid_enumeration(e, "is_bounded");
  for (const Stage& st : e.stages()) {
    for (const Seq& tau : st.new_elements) {
      if (Nat(stage_by_stage(e, tau).size()) > b) return tau;
    }
  }
  return std::nullopt;
}

inline bool is_bounded(const Enumeration& e, const Nat& b) {
  return !boundedness_witness(e, b).has_value();
}

namespace detail {

// F'(tau) without revalidating: the least stage index at which a proper
// extension of tau is newly enumerated (automatically the first such stage,
// so no extension existed before it).
inline std::optional<Nat> f_prime_unchecked(const Enumeration& e, const Seq& tau) {
  for (const Stage& st : e.stages()) {
    for (const Seq& s : st.new_elements) {
      if (is_proper_prefix(tau, s)) return st.index;
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<Seq>> f_step_unchecked(const Enumeration& e, const Seq& tau) {
  for (const Stage& st : e.stages()) {
    for (const Seq& s : st.new_elements) {
      if (is_proper_prefix(tau, s)) {
        return st.new_elements;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Nat> f_prime(const Enumeration& e, const Seq& tau) {
  detail::require_valid_enumeration(e, "f_prime");
  return detail::f_prime_unchecked(e, tau);
}

// F(tau) = E[F'(tau)] \ E[F'(tau) - 1]: everything newly enumerated at the
// first stage that extends tau.
inline std::optional<std::vector<Seq>> f_step(const Enumeration& e, const Seq& tau) {
  detail::require_valid_enumeration(e, "f_step");
  return detail::f_step_unchecked(e, tau);
}

// The numeric bound max_{i<=b} s_i, where s_0 = seq_code(<>) and s_{i+1} is
// the largest coded F-value over arguments at most s_i:
//
//   s_{i+1} = max { paired_set_code(codes of F(tau)) :
//                   tau enumerated by e, F'(tau) defined, seq_code(tau) <= s_i }
//
// (0 when the set is empty). Every sequence enumerated by a b-bounded e has
// seq_code at most this bound: each chain element tau_{i+1} lies in the set
// F(tau_i), so its code is at most the coded F-value of tau_i.
inline Nat bme_bound(const Enumeration& e, const Nat& b) {
  detail::require_valid_enumeration(e, "bme_bound");
  if (auto w = boundedness_witness(e, b)) {
    throw std::invalid_argument("bme_bound: enumeration is not bounded by " + b.str() +
                                " (witness " + seq_to_string(*w) + ")");
  }
  struct DomEntry {
    Nat key;
    Nat value;
  };
  std::vector<DomEntry> dom;
  for (const Seq& tau : e.all_elements()) {
    if (auto step = detail::f_step_unchecked(e, tau)) {
      std::vector<Nat> codes;
      codes.reserve(step->size());
      for (const Seq& s : *step) codes.push_back(seq_code(s));
      dom.push_back(DomEntry{seq_code(tau), paired_set_code(std::move(codes))});
    }
  }
  Nat s = 0;  // seq_code of the empty sequence
  for (Nat i = 1; i <= b; ++i) {
    Nat next = 0;
    for (const DomEntry& d : dom) {
      if (d.key <= s && d.value > next) next = d.value;
    }
    if (next <= s) break;  // monotone fixpoint; later iterations repeat
    s = next;
  }
  return s;
}

// Incremental stage producer: returns stages one at a time and nullopt once
// the enumeration declares that no further stages exist.
using StageStream = std::function<std::optional<Stage>()>;

struct Finite {
  EnumTree tree;
};
struct Unresolved {
  Nat stages_consumed;
};
using CheckFiniteResult = std::variant<Finite, Unresolved, Violation>;

// Consumes up to stage_budget stages. Finite only when the stream itself
// declares the enumeration complete within the budget; finiteness of a live
// stream is semi-decidable and is never guessed. Stages are validated as
// they arrive (validity of every prefix of a valid enumeration makes this
// sound); the first violation aborts consumption.
inline CheckFiniteResult check_finite(StageStream stream, const Nat& stage_budget) {
  std::vector<Stage> stages;
  std::vector<Seq> seen;  // sorted, for disjointness
  Nat consumed = 0;
  while (consumed < stage_budget) {
    std::optional<Stage> next = stream();
    if (!next) {
      if (stages.empty()) {
        return Violation{Condition::C1, Nat(0), Seq{}, std::nullopt, std::nullopt, std::nullopt};
      }
      std::vector<Seq> elements;
      for (const Stage& st : stages) {
        elements.insert(elements.end(), st.new_elements.begin(), st.new_elements.end());
      }
      return Finite{tree_of_elements(elements)};
    }
    next->normalize();
    if (!stages.empty() && !(stages.back().index < next->index)) {
      throw std::invalid_argument("check_finite: stage indices must increase strictly");
    }
    for (const Seq& s : next->new_elements) {
      if (std::binary_search(seen.begin(), seen.end(), s)) {
        throw std::invalid_argument("check_finite: " + seq_to_string(s) +
                                    " enumerated at two stages");
      }
    }
    stages.push_back(std::move(*next));
    consumed += 1;
    // The prefix so far is known valid, so any violation found now sits in
    // the stage that just arrived.
    if (auto v = validate_stages(stages.size(),
                                 [&](std::size_t i) -> const Stage& { return stages[i]; })) {
      return *v;
    }
    for (const Seq& s : stages.back().new_elements) {
      seen.insert(std::upper_bound(seen.begin(), seen.end(), s), s);
    }
  }
  return Unresolved{consumed};
}

// Adapts a fixed stage list to a terminated stream.
inline StageStream stream_of(std::vector<Stage> stages) {
  auto state = std::make_shared<std::pair<std::vector<Stage>, std::size_t>>(std::move(stages), 0);
  return [state]() -> std::optional<Stage> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

inline StageStream stream_of(const Enumeration& e) {
  return stream_of(std::vector<Stage>(e.stages().begin(), e.stages().end()));
}

}  // namespace bme
