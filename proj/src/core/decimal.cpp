#include <cmath>
#include <string>

#include "bignat.hpp"
#include "vp/real.hpp"

namespace vp {

namespace {

using detail::Nat;

// Above this decimal exponent the exact integer path gets expensive; the
// fallback powers 10 in floating point with three guard digits.
constexpr std::int64_t kExactExponentLimit = 20000;
constexpr std::int64_t kMaxDecimalExponent = 1000000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

VpReal from_nat(int sign, const Nat& v, std::int64_t limb_shift) {
  return VpReal::from_parts(sign, static_cast<std::int64_t>(v.size()) + limb_shift, detail::to_msf(v));
}

VpReal approximate(int sign, const Nat& m, std::int64_t e10, const Context& ctx) {
  Context w(ctx.digits() + 3);
  VpReal mv = round(from_nat(1, m, 0), w);
  VpReal p = pow_uint(from_int(10), static_cast<std::uint64_t>(e10 < 0 ? -e10 : e10), w);
  VpReal r = e10 < 0 ? div(mv, p, w) : mul(mv, p, w);
  r = round(r, ctx);
  return sign < 0 ? -r : r;
}

}  // namespace

VpReal parse(const std::string& text, const Context& ctx) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  Nat m;
  std::int64_t frac_digits = 0;
  std::size_t mantissa_digits = 0;
  auto take_digit = [&](char c) {
    detail::mul_add_small(m, 10, static_cast<Limb>(c - '0'));
    detail::trim(m);
    ++mantissa_digits;
  };
  while (pos < text.size() && is_digit(text[pos])) take_digit(text[pos++]);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) {
      take_digit(text[pos++]);
      ++frac_digits;
    }
  }
  if (mantissa_digits == 0) throw ParseError("expected a digit", pos);
  std::int64_t e10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    int esign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') esign = -1;
      ++pos;
    }
    if (pos >= text.size() || !is_digit(text[pos])) throw ParseError("expected exponent digits", pos);
    while (pos < text.size() && is_digit(text[pos])) {
      e10 = e10 * 10 + (text[pos] - '0');
      if (e10 > kMaxDecimalExponent) throw ParseError("exponent out of range", pos);
      ++pos;
    }
    e10 *= esign;
  }
  if (pos != text.size()) throw ParseError("unexpected character", pos);
  e10 -= frac_digits;
  if (m.empty()) return VpReal();

  if (e10 > kExactExponentLimit || e10 < -kExactExponentLimit) return approximate(sign, m, e10, ctx);

  if (e10 >= 0) {
    detail::mul_pow10(m, e10);
    return round(from_nat(sign, m, 0), ctx);
  }

  // M·10^e = M·2^e/5^|e|. Scale by 2^S with e − S ≡ 0 (mod 32) so the
  // quotient lines up with limb boundaries, and keep at least t+2 quotient limbs.
  const std::int64_t k = -e10;
  const std::int64_t need = 32 * (ctx.digits() + 2) +
                            static_cast<std::int64_t>(std::ceil(static_cast<double>(k) * 2.3219280948873623)) +
                            2 - detail::bit_length(m);
  const std::int64_t w = (std::max<std::int64_t>(need, 0) + k + 31) / 32 + 1;
  const std::int64_t s = 32 * w - k;
  detail::shift_left(m, s);
  detail::div_pow(m, 5, 13, k);
  return round(from_nat(sign, m, -w), ctx);
}

std::string to_decimal(const VpReal& x, int significant_digits, DecimalStyle style) {
  if (x.is_zero()) return "0";
  const int digits = significant_digits < 1 ? 1 : significant_digits;
  Nat mag(x.digits().rbegin(), x.digits().rend());
  const std::int64_t b = 32 * (x.exponent() - x.size());
  std::int64_t e10 = static_cast<std::int64_t>(std::floor(log2_abs(x) * 0.30102999566398120));

  std::string ds;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::int64_t s = digits - 1 - e10;
    Nat num = mag;
    detail::shift_left(num, (b > 0 ? b : 0) + 1);
    if (s > 0) detail::mul_pow10(num, s);
    if (s < 0) detail::div_pow(num, 10, 9, -s);
    if (b < 0) detail::shift_right(num, -b);
    detail::mul_add_small(num, 1, 1);
    detail::shift_right(num, 1);
    ds = detail::to_decimal_string(num);
    if (static_cast<int>(ds.size()) > digits) {
      ++e10;
    } else if (static_cast<int>(ds.size()) < digits) {
      --e10;
    } else {
      break;
    }
  }

  std::string out = x.sign() < 0 ? "-" : "";
  const bool fixed = style == DecimalStyle::automatic && e10 >= -6 && e10 < digits;
  if (fixed) {
    if (e10 >= 0) {
      out += ds.substr(0, static_cast<std::size_t>(e10 + 1));
      if (static_cast<std::size_t>(e10 + 1) < ds.size()) {
        out += '.';
        out += ds.substr(static_cast<std::size_t>(e10 + 1));
      }
    } else {
      out += "0.";
      out.append(static_cast<std::size_t>(-e10 - 1), '0');
      out += ds;
    }
    return out;
  }
  out += ds[0];
  if (ds.size() > 1) {
    out += '.';
    out += ds.substr(1);
  }
  out += 'e';
  out += std::to_string(e10);
  return out;
}

int roundtrip_digits(const Context& ctx) noexcept {
  return static_cast<int>(std::ceil(ctx.capacity_bits() * 0.30102999566398120)) + 2;
}

std::string format_roundtrip(const VpReal& x, const Context& ctx) {
  return to_decimal(round(x, ctx), roundtrip_digits(ctx), DecimalStyle::scientific);
}

}  // namespace vp
