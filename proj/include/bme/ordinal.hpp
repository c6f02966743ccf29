#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bme/natural.hpp"

namespace bme {

enum class OrdinalKind { zero, successor, limit };

// Ordinal notation in Cantor normal form below epsilon_0:
//
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck
//
// with exponents e1 > e2 > ... > ek (themselves ordinals in CNF) and
// coefficients ci >= 1. Zero is the empty sum. Values are immutable once
// built, so sharing across threads is safe.
class Ordinal {
 public:
  struct Term {
    Ordinal exponent;
    Nat coefficient;
  };

  Ordinal() = default;

  static Ordinal zero() { return Ordinal{}; }

  static Ordinal from_nat(const Nat& n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{Ordinal{}, n});
    return o;
  }

  static Ordinal omega() { return omega_power(from_nat(1)); }

  // w^exp * coeff, normalized (exp == 0 collapses to the finite ordinal coeff).
  static Ordinal omega_power(const Ordinal& exp, const Nat& coeff = 1) {
    if (coeff <= 0) throw std::invalid_argument("ordinal term: coefficient must be positive");
    if (exp.is_zero()) return from_nat(coeff);
    Ordinal o;
    o.terms_.push_back(Term{exp, coeff});
    return o;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
  }

  std::optional<Nat> as_nat() const {
    if (terms_.empty()) return Nat(0);
    if (terms_.size() == 1 && terms_[0].exponent.is_zero()) return terms_[0].coefficient;
    return std::nullopt;
  }

  OrdinalKind kind() const {
    if (terms_.empty()) return OrdinalKind::zero;
    return terms_.back().exponent.is_zero() ? OrdinalKind::successor : OrdinalKind::limit;
  }

  // The b with b + 1 == *this. Only successors have one.
  Ordinal pred() const {
    if (kind() != OrdinalKind::successor) {
      throw std::invalid_argument("pred: ordinal is not a successor");
    }
    Ordinal o = *this;
    Term& last = o.terms_.back();
    last.coefficient -= 1;
    if (last.coefficient == 0) o.terms_.pop_back();
    return o;
  }

  // The n-th member of the standard (Wainer-style) fundamental sequence:
  //   (b + w^(g+1))[n] = b + w^g * n          (b itself for n = 0)
  //   (b + w^l)[n]     = b + w^(l[n])         for limit exponent l
  // Coefficients c > 1 are peeled as b' = b + w^g*(c-1). The result is
  // strictly below *this and strictly increasing in n.
  Ordinal fundamental_sequence(const Nat& n) const {
    if (kind() != OrdinalKind::limit) {
      throw std::invalid_argument("fundamental_sequence: ordinal is not a limit");
    }
    std::vector<Term> base(terms_.begin(), terms_.end() - 1);
    const Term& last = terms_.back();
    if (last.coefficient > 1) {
      base.push_back(Term{last.exponent, last.coefficient - 1});
    }
    const Ordinal& gamma = last.exponent;
    if (gamma.kind() == OrdinalKind::successor) {
      if (n > 0) base.push_back(Term{gamma.pred(), n});
    } else {
      base.push_back(Term{gamma.fundamental_sequence(n), Nat(1)});
    }
    Ordinal o;
    o.terms_ = std::move(base);
    return o;
  }

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const std::size_t common = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < common; ++i) {
      auto ce = a.terms_[i].exponent <=> b.terms_[i].exponent;
      if (ce != 0) return ce;
      if (a.terms_[i].coefficient != b.terms_[i].coefficient) {
        return a.terms_[i].coefficient < b.terms_[i].coefficient
                   ? std::strong_ordering::less
                   : std::strong_ordering::greater;
      }
    }
    return a.terms_.size() <=> b.terms_.size();
  }

  friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

 private:
  friend class OrdinalParser;

  // CNF left addition of a single term: lower terms already present are
  // absorbed, equal exponents merge coefficients.
  static void add_term(std::vector<Term>& terms, Term t) {
    while (!terms.empty() && terms.back().exponent < t.exponent) terms.pop_back();
    if (!terms.empty() && terms.back().exponent == t.exponent) {
      terms.back().coefficient += t.coefficient;
    } else {
      terms.push_back(std::move(t));
    }
  }

  std::vector<Term> terms_;
};

struct OrdinalParseError : std::invalid_argument {
  OrdinalParseError(std::size_t pos, const std::string& what)
      : std::invalid_argument("ordinal parse error at position " + std::to_string(pos) + ": " +
                              what),
        position(pos) {}
  std::size_t position;
};

// Recursive-descent parser for the ASCII ordinal grammar
//
//   ord  := "0" | term ("+" term)*
//   term := "w" ("^" expo)? ("*" nat)? | nat
//   expo := "w" ("^" expo)? | nat | "(" ord ")"
//
// where "w" denotes omega, nat is a decimal numeral and whitespace is
// insignificant. Exponents bind tighter than "+", so "w^w + w*2 + 3" is a
// three-term sum; a compound exponent needs parentheses, e.g. "w^(w+1)".
// Sums are normalized to CNF on the fly ("3 + w" parses as "w").
class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    Ordinal o = parse_ord(/*allow_zero=*/true);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw OrdinalParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_digit() {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Nat parse_nat() {
    skip_ws();
    if (!at_digit()) fail("expected a decimal numeral");
    std::string digits;
    while (at_digit()) digits.push_back(text_[pos_++]);
    return Nat(digits);
  }

  Ordinal parse_ord(bool allow_zero) {
    skip_ws();
    std::vector<Ordinal::Term> terms;
    bool first_was_zero = false;
    parse_term_into(terms, allow_zero, &first_was_zero);
    while (true) {
      skip_ws();
      if (!eat('+')) break;
      if (first_was_zero) fail("'0' cannot be part of a sum");
      parse_term_into(terms, /*allow_zero=*/false, nullptr);
    }
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
  }

  void parse_term_into(std::vector<Ordinal::Term>& terms, bool allow_zero, bool* was_zero) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'w') {
      ++pos_;
      Ordinal exp = eat('^') ? parse_exponent() : Ordinal::from_nat(1);
      Nat coeff = 1;
      if (eat('*')) {
        std::size_t coeff_pos = pos_;
        coeff = parse_nat();
        if (coeff == 0) throw OrdinalParseError(coeff_pos, "coefficient must be positive");
      }
      if (exp.is_zero()) {
        Ordinal::add_term(terms, Ordinal::Term{Ordinal::zero(), coeff});
      } else {
        Ordinal::add_term(terms, Ordinal::Term{std::move(exp), coeff});
      }
      return;
    }
    if (at_digit()) {
      std::size_t nat_pos = pos_;
      Nat n = parse_nat();
      if (n == 0) {
        if (allow_zero) {
          if (was_zero) *was_zero = true;
          return;  // the zero ordinal contributes no term
        }
        throw OrdinalParseError(nat_pos, "coefficient must be positive");
      }
      Ordinal::add_term(terms, Ordinal::Term{Ordinal::zero(), std::move(n)});
      return;
    }
    fail("expected 'w' or a numeral");
  }

  Ordinal parse_exponent() {
    skip_ws();
    if (eat('(')) {
      Ordinal inner = parse_ord(/*allow_zero=*/true);
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (pos_ < text_.size() && text_[pos_] == 'w') {
      ++pos_;
      if (eat('^')) return Ordinal::omega_power(parse_exponent());
      return Ordinal::omega();
    }
    if (at_digit()) return Ordinal::from_nat(parse_nat());
    fail("expected 'w', a numeral, or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

inline std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) out += " + ";
    first = false;
    if (t.exponent.is_zero()) {
      out += t.coefficient.str();
      continue;
    }
    out += 'w';
    if (auto k = t.exponent.as_nat(); k && *k == 1) {
      // plain w
    } else if (k) {
      out += '^' + k->str();
    } else if (t.exponent == omega()) {
      out += "^w";
    } else {
      out += "^(" + t.exponent.to_string() + ")";
    }
    if (t.coefficient > 1) out += '*' + t.coefficient.str();
  }
  return out;
}

}  // namespace bme
