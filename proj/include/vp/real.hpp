#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "vp/context.hpp"
#include "vp/scaled.hpp"

namespace vp {

inline constexpr std::int64_t kMaxExponent = std::int64_t{1} << 30;

// Floating-point value sign · Σ d_i β^(exponent−1−i), digits most significant
// first. Nonzero values have a nonzero leading digit and no trailing zero
// digits; zero has sign 0 and no digits. Values are immutable.
class VpReal {
 public:
  VpReal() noexcept;
  VpReal(const VpReal& other);
  VpReal(VpReal&& other) noexcept;
  VpReal& operator=(const VpReal& other);
  VpReal& operator=(VpReal&& other) noexcept;
  ~VpReal();

  // Builds a value from arbitrary digits; leading and trailing zero digits are
  // stripped. No rounding is performed.
  static VpReal from_parts(int sign, std::int64_t exponent, std::vector<Limb> digits);

  int sign() const noexcept { return sign_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  const std::vector<Limb>& digits() const noexcept { return digits_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  int size() const noexcept { return static_cast<int>(digits_.size()); }

  VpReal operator-() const;
  VpReal abs() const;

 private:
  int sign_ = 0;
  std::int64_t exponent_ = 0;
  std::vector<Limb> digits_;
};

// Exact conversions.
VpReal from_int(std::int64_t v);
VpReal from_uint(std::uint64_t v);
VpReal from_double(double v);
VpReal power_of_two(std::int64_t k);
// x·2^k without rounding; may carry one digit beyond the source length.
VpReal scale2(const VpReal& x, std::int64_t k);

// Correctly rounded operations (nearest, ties away from zero).
VpReal round(const VpReal& x, const Context& ctx);
VpReal add(const VpReal& x, const VpReal& y, const Context& ctx);
VpReal sub(const VpReal& x, const VpReal& y, const Context& ctx);
VpReal add_sub(const VpReal& x, const VpReal& y, const Context& ctx, bool subtract);
VpReal mul(const VpReal& x, const VpReal& y, const Context& ctx);
VpReal mul_small(const VpReal& x, std::int64_t m, const Context& ctx);
VpReal div_small(const VpReal& x, std::int64_t m, const Context& ctx);
VpReal mul_div_small(const VpReal& x, std::int64_t m, const Context& ctx, bool divide);
VpReal square(const VpReal& x, const Context& ctx);
VpReal pow_uint(const VpReal& x, std::uint64_t k, const Context& ctx);

// Reciprocal by Newton iteration times one multiply; relative error ≤ 3β^(1−t).
VpReal div(const VpReal& x, const VpReal& y, const Context& ctx);

int compare(const VpReal& x, const VpReal& y) noexcept;
int compare_abs(const VpReal& x, const VpReal& y) noexcept;
inline bool operator==(const VpReal& x, const VpReal& y) noexcept { return compare(x, y) == 0; }
inline std::strong_ordering operator<=>(const VpReal& x, const VpReal& y) noexcept {
  return compare(x, y) <=> 0;
}

double to_double(const VpReal& x) noexcept;
Scaled to_scaled(const VpReal& x) noexcept;
// log2|x|, −inf for zero; accurate to about 1e-15 relative.
double log2_abs(const VpReal& x) noexcept;
// Floor of log2|x|, exact.
std::int64_t ilog2_abs(const VpReal& x);
bool is_integer(const VpReal& x) noexcept;
// Truncates toward zero; throws OverflowError outside int64 range.
std::int64_t to_int64(const VpReal& x);
// Value with its digit sequence cut to ctx.digits() digits (no rounding).
VpReal truncate(const VpReal& x, const Context& ctx);

// Number of leading bits on which a and b agree: floor(−log2 |a−b|/max(|a|,|b|)),
// capped at 1<<20 for identical values.
int agreement_bits(const VpReal& a, const VpReal& b);
// floor(−log2 |a−b|), capped the same way.
int absolute_agreement_bits(const VpReal& a, const VpReal& b);

// Decimal text.
enum class DecimalStyle { automatic, scientific };
VpReal parse(const std::string& text, const Context& ctx);
std::string to_decimal(const VpReal& x, int significant_digits,
                       DecimalStyle style = DecimalStyle::automatic);
// Digit count for which parse(format(x)) == x at ctx.
int roundtrip_digits(const Context& ctx) noexcept;
std::string format_roundtrip(const VpReal& x, const Context& ctx);

}  // namespace vp
