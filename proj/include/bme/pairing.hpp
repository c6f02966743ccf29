#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bme/natural.hpp"

namespace bme {

// Cantor pairing <m,n> = (m+n)(m+n+1)/2 + n. Bijective, <0,0> = 0, and
// <m,n> >= max(m,n) (equality only at <0,0> and <1,0>).
inline Nat cantor_pair(const Nat& m, const Nat& n) {
  const Nat s = m + n;
  return s * (s + 1) / 2 + n;
}

inline std::pair<Nat, Nat> cantor_unpair(const Nat& x) {
  const Nat w = (boost::multiprecision::sqrt(8 * x + 1) - 1) / 2;
  const Nat t = w * (w + 1) / 2;
  const Nat n = x - t;
  return {w - n, n};
}

// Binary-characteristic set code: sum of 2^y over the distinct members.
// Injective on finite sets, and y in xs implies y <= set_code(xs). Members
// are exponents, so absurdly large ones would not be materializable; those
// are rejected rather than ground through.
inline Nat set_code(std::vector<Nat> xs) {
  constexpr unsigned long kMaxMemberBits = 1ul << 26;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Nat code = 0;
  for (const Nat& y : xs) {
    if (y > kMaxMemberBits) {
      throw std::length_error("set_code: member too large to code as an exponent");
    }
    code += pow2(static_cast<std::size_t>(y));
  }
  return code;
}

// Pairing-fold set code: code({}) = 0 and code(S) = <max S, code(S without
// max)> + 1. Also injective with y in S implying y <= code(S), but the code
// of a set of b-bit members stays polynomial in b instead of exponential;
// the bounding computation uses it for sets whose members are themselves
// large codes.
inline Nat paired_set_code(std::vector<Nat> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Nat code = 0;
  for (const Nat& y : xs) {
    code = cantor_pair(y, code) + 1;
  }
  return code;
}

}  // namespace bme
