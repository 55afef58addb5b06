#pragma once

#include <cstdint>

#include "vp/errors.hpp"

namespace vp {

using Limb = std::uint32_t;
inline constexpr int kLimbBits = 32;

// Precision context: radix β = 2^32, t fraction digits. A context carries the
// rounding model fl(x op y) = (x op y)(1 + δ), |δ| ≤ ½β^(1−t).
class Context {
 public:
  explicit Context(int digits, int guard_digits = 0) : digits_(digits), guard_(guard_digits) {
    if (digits < 2) throw DomainError("context needs at least two base-2^32 digits");
    if (guard_digits < 0) throw DomainError("guard digit count must be non-negative");
  }

  // Smallest context whose precision (t−1)·log2β covers n bits, plus guard digits.
  static Context for_bits(int n, int guard_digits = 0) {
    if (n < 1) n = 1;
    return Context((n + kLimbBits - 1) / kLimbBits + 1 + guard_digits, guard_digits);
  }

  static constexpr std::uint64_t base() noexcept { return std::uint64_t{1} << kLimbBits; }
  int digits() const noexcept { return digits_; }
  int guard_digits() const noexcept { return guard_; }

  // n = (t−1)·log2β
  int precision_bits() const noexcept { return (digits_ - 1) * kLimbBits; }
  // Largest number of significant bits a t-digit mantissa can hold.
  int capacity_bits() const noexcept { return digits_ * kLimbBits; }
  // log2 of the unit roundoff ½β^(1−t).
  int machine_eps_log2() const noexcept { return -precision_bits() - 1; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  int digits_;
  int guard_;
};

}  // namespace vp
