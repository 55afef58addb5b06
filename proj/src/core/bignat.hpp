#pragma once

// Minimal natural-number helpers for decimal conversion. Little-endian limbs.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "vp/context.hpp"

namespace vp::detail {

using Nat = std::vector<Limb>;

inline void trim(Nat& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline void mul_add_small(Nat& v, Limb m, Limb add = 0) {
  std::uint64_t carry = add;
  for (Limb& d : v) {
    std::uint64_t cur = std::uint64_t{d} * m + carry;
    d = static_cast<Limb>(cur);
    carry = cur >> 32;
  }
  if (carry) v.push_back(static_cast<Limb>(carry));
}

// In-place floor division; returns the remainder.
inline Limb divmod_small(Nat& v, Limb d) {
  std::uint64_t rem = 0;
  for (std::size_t i = v.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | v[i];
    v[i] = static_cast<Limb>(cur / d);
    rem = cur % d;
  }
  trim(v);
  return static_cast<Limb>(rem);
}

inline void shift_left(Nat& v, std::int64_t bits) {
  if (v.empty() || bits <= 0) return;
  const std::size_t limbs = static_cast<std::size_t>(bits / 32);
  const int r = static_cast<int>(bits % 32);
  if (r) {
    Limb carry = 0;
    for (Limb& d : v) {
      Limb next = d >> (32 - r);
      d = (d << r) | carry;
      carry = next;
    }
    if (carry) v.push_back(carry);
  }
  v.insert(v.begin(), limbs, 0);
}

inline void shift_right(Nat& v, std::int64_t bits) {
  if (bits <= 0) return;
  const std::size_t limbs = static_cast<std::size_t>(bits / 32);
  if (limbs >= v.size()) {
    v.clear();
    return;
  }
  v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(limbs));
  const int r = static_cast<int>(bits % 32);
  if (r) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      Limb hi = i + 1 < v.size() ? v[i + 1] : 0;
      v[i] = (v[i] >> r) | (hi << (32 - r));
    }
  }
  trim(v);
}

inline void mul_pow10(Nat& v, std::int64_t k) {
  for (; k >= 9; k -= 9) mul_add_small(v, 1000000000u);
  Limb p = 1;
  for (; k > 0; --k) p *= 10;
  if (p != 1) mul_add_small(v, p);
}

inline void div_pow(Nat& v, Limb base, int chunk, std::int64_t k) {
  Limb big = 1;
  for (int i = 0; i < chunk; ++i) big *= base;
  for (; k >= chunk; k -= chunk) divmod_small(v, big);
  Limb p = 1;
  for (; k > 0; --k) p *= base;
  if (p != 1) divmod_small(v, p);
}

inline std::int64_t bit_length(const Nat& v) {
  if (v.empty()) return 0;
  Limb top = v.back();
  int b = 0;
  while (top) {
    ++b;
    top >>= 1;
  }
  return 32 * static_cast<std::int64_t>(v.size() - 1) + b;
}

inline std::string to_decimal_string(Nat v) {
  if (v.empty()) return "0";
  std::vector<Limb> chunks;
  while (!v.empty()) chunks.push_back(divmod_small(v, 1000000000u));
  std::string s = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string c = std::to_string(chunks[i]);
    s.append(9 - c.size(), '0');
    s += c;
  }
  return s;
}

// Most-significant-first copy, as used by VpReal.
inline std::vector<Limb> to_msf(const Nat& v) { return std::vector<Limb>(v.rbegin(), v.rend()); }

}  // namespace vp::detail
