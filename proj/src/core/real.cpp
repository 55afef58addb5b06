#include "vp/real.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "vp/newton.hpp"
#include "vp/stats.hpp"

namespace vp {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr Limb kHalf = 0x80000000u;

void bump_live() noexcept {
  OpCounters& c = counters();
  if (++c.live_values > c.peak_live_values) c.peak_live_values = c.live_values;
}

// Rounds the magnitude mag·β^(exp−len) to ctx.digits() digits. The caller
// supplies every digit exactly up to at least one past the rounding position;
// anything dropped beyond that only has to be non-negative.
VpReal finish(int sign, std::int64_t exp, std::vector<Limb> mag, const Context& ctx) {
  std::size_t lead = 0;
  while (lead < mag.size() && mag[lead] == 0) ++lead;
  if (lead == mag.size()) return VpReal();
  exp -= static_cast<std::int64_t>(lead);
  const std::size_t t = static_cast<std::size_t>(ctx.digits());
  if (mag.size() - lead > t) {
    const bool up = mag[lead + t] >= kHalf;
    mag.resize(lead + t);
    if (up) {
      std::size_t i = lead + t;
      bool carry = true;
      while (carry && i > lead) {
        --i;
        carry = (++mag[i] == 0);
      }
      if (carry) {
        mag.assign(1, 1);
        return VpReal::from_parts(sign, exp + 1, std::move(mag));
      }
    }
  }
  if (lead > 0) mag.erase(mag.begin(), mag.begin() + static_cast<std::ptrdiff_t>(lead));
  return VpReal::from_parts(sign, exp, std::move(mag));
}

// Schoolbook product of two most-significant-first magnitudes.
std::vector<Limb> mag_mul(const std::vector<Limb>& a, const std::vector<Limb>& b) {
  const std::size_t la = a.size(), lb = b.size();
  std::vector<Limb> r(la + lb, 0);
  for (std::size_t ii = la; ii-- > 0;) {
    u64 carry = 0;
    const u64 ai = a[ii];
    if (ai == 0) continue;
    for (std::size_t jj = lb; jj-- > 0;) {
      u64 cur = ai * b[jj] + r[ii + jj + 1] + carry;
      r[ii + jj + 1] = static_cast<Limb>(cur);
      carry = cur >> 32;
    }
    r[ii] = static_cast<Limb>(carry);
  }
  counters().digit_ops += la * lb;
  return r;
}

int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

u64 uabs(std::int64_t v) {
  return v < 0 ? u64{0} - static_cast<u64>(v) : static_cast<u64>(v);
}

}  // namespace

VpReal::VpReal() noexcept { bump_live(); }

VpReal::VpReal(const VpReal& other)
    : sign_(other.sign_), exponent_(other.exponent_), digits_(other.digits_) {
  bump_live();
}

VpReal::VpReal(VpReal&& other) noexcept
    : sign_(other.sign_), exponent_(other.exponent_), digits_(std::move(other.digits_)) {
  other.sign_ = 0;
  other.exponent_ = 0;
  other.digits_.clear();
  bump_live();
}

VpReal& VpReal::operator=(const VpReal& other) {
  sign_ = other.sign_;
  exponent_ = other.exponent_;
  digits_ = other.digits_;
  return *this;
}

VpReal& VpReal::operator=(VpReal&& other) noexcept {
  sign_ = other.sign_;
  exponent_ = other.exponent_;
  digits_ = std::move(other.digits_);
  other.sign_ = 0;
  other.exponent_ = 0;
  other.digits_.clear();
  return *this;
}

VpReal::~VpReal() { --counters().live_values; }

VpReal VpReal::from_parts(int sign, std::int64_t exponent, std::vector<Limb> digits) {
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == 0) ++lead;
  std::size_t end = digits.size();
  while (end > lead && digits[end - 1] == 0) --end;
  VpReal r;
  if (sign == 0 || lead == end) return r;
  exponent -= static_cast<std::int64_t>(lead);
  if (exponent > kMaxExponent) throw OverflowError("exponent overflow");
  if (exponent < -kMaxExponent) {
    counters().underflow = true;
    return r;
  }
  digits.resize(end);
  if (lead > 0) digits.erase(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(lead));
  r.sign_ = sign > 0 ? 1 : -1;
  r.exponent_ = exponent;
  r.digits_ = std::move(digits);
  return r;
}

VpReal VpReal::operator-() const {
  VpReal r(*this);
  r.sign_ = -r.sign_;
  return r;
}

VpReal VpReal::abs() const {
  VpReal r(*this);
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

VpReal from_uint(std::uint64_t v) {
  return VpReal::from_parts(v != 0, 2, {static_cast<Limb>(v >> 32), static_cast<Limb>(v)});
}

VpReal from_int(std::int64_t v) {
  VpReal r = from_uint(uabs(v));
  return v < 0 ? -r : r;
}

VpReal from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite double");
  if (v == 0.0) return VpReal();
  int k = 0;
  double m = std::frexp(std::fabs(v), &k);
  auto mant = static_cast<u64>(std::ldexp(m, 53));
  VpReal r = scale2(from_uint(mant), k - 53);
  return v < 0 ? -r : r;
}

VpReal power_of_two(std::int64_t k) {
  std::int64_t q = k >= 0 ? k / 32 : -((-k + 31) / 32);
  int r = static_cast<int>(k - 32 * q);
  return VpReal::from_parts(1, q + 1, {Limb{1} << r});
}

VpReal scale2(const VpReal& x, std::int64_t k) {
  if (x.is_zero()) return x;
  std::int64_t q = k >= 0 ? k / 32 : -((-k + 31) / 32);
  int r = static_cast<int>(k - 32 * q);
  const auto& d = x.digits();
  if (r == 0) return VpReal::from_parts(x.sign(), x.exponent() + q, d);
  std::vector<Limb> out(d.size() + 1);
  out[0] = d[0] >> (32 - r);
  for (std::size_t i = 1; i < d.size(); ++i) out[i] = (d[i - 1] << r) | (d[i] >> (32 - r));
  out[d.size()] = d.back() << r;
  return VpReal::from_parts(x.sign(), x.exponent() + 1 + q, std::move(out));
}

VpReal round(const VpReal& x, const Context& ctx) {
  if (x.size() <= ctx.digits()) return x;
  return finish(x.sign(), x.exponent(), x.digits(), ctx);
}

VpReal truncate(const VpReal& x, const Context& ctx) {
  if (x.size() <= ctx.digits()) return x;
  std::vector<Limb> d(x.digits().begin(), x.digits().begin() + ctx.digits());
  return VpReal::from_parts(x.sign(), x.exponent(), std::move(d));
}

VpReal add_sub(const VpReal& x, const VpReal& y, const Context& ctx, bool subtract) {
  ++counters().add;
  const int sy = subtract ? -y.sign() : y.sign();
  if (y.is_zero()) return round(x, ctx);
  if (x.is_zero()) return round(sy == y.sign() ? y : -y, ctx);

  const VpReal* a = &x;
  const VpReal* b = &y;
  int sa = x.sign(), sb = sy;
  if (y.exponent() > x.exponent()) {
    std::swap(a, b);
    std::swap(sa, sb);
  }
  const std::int64_t ea = a->exponent(), la = a->size();
  const std::int64_t t = ctx.digits();

  // An operand lying entirely below both the other operand's last digit and
  // the rounding position can be replaced by any value of the same sign in
  // that gap; the rounded result does not change.
  const std::int64_t c = std::min(ea - la, ea - t - 3);
  static const std::vector<Limb> kTiny{1};
  const std::vector<Limb>* bd = &b->digits();
  std::int64_t eb = b->exponent();
  if (eb <= c) {
    bd = &kTiny;
    eb = c;
  }
  const std::int64_t lb = static_cast<std::int64_t>(bd->size());
  const std::int64_t low = std::min(ea - la, eb - lb);
  const std::int64_t len = ea - low;

  // Index 0 holds a carry slot of weight β^ea.
  std::vector<Limb> av(static_cast<std::size_t>(len + 1), 0), bv(av.size(), 0);
  std::copy(a->digits().begin(), a->digits().end(), av.begin() + 1);
  std::copy(bd->begin(), bd->end(), bv.begin() + 1 + (ea - eb));
  counters().digit_ops += static_cast<u64>(len);

  int sign = sa;
  if (sa == sb) {
    u64 carry = 0;
    for (std::size_t i = av.size(); i-- > 0;) {
      u64 s = u64{av[i]} + bv[i] + carry;
      av[i] = static_cast<Limb>(s);
      carry = s >> 32;
    }
  } else {
    if (std::lexicographical_compare(av.begin(), av.end(), bv.begin(), bv.end())) {
      std::swap(av, bv);
      sign = sb;
    }
    std::int64_t borrow = 0;
    for (std::size_t i = av.size(); i-- > 0;) {
      std::int64_t s = static_cast<std::int64_t>(av[i]) - bv[i] - borrow;
      borrow = s < 0;
      av[i] = static_cast<Limb>(s + (borrow << 32));
    }
  }
  return finish(sign, ea + 1, std::move(av), ctx);
}

VpReal add(const VpReal& x, const VpReal& y, const Context& ctx) { return add_sub(x, y, ctx, false); }
VpReal sub(const VpReal& x, const VpReal& y, const Context& ctx) { return add_sub(x, y, ctx, true); }

VpReal mul(const VpReal& x, const VpReal& y, const Context& ctx) {
  ++counters().mul;
  if (x.is_zero() || y.is_zero()) return VpReal();
  return finish(x.sign() * y.sign(), x.exponent() + y.exponent(), mag_mul(x.digits(), y.digits()),
                ctx);
}

VpReal square(const VpReal& x, const Context& ctx) { return mul(x, x, ctx); }

VpReal mul_small(const VpReal& x, std::int64_t m, const Context& ctx) {
  ++counters().mul_small;
  if (x.is_zero() || m == 0) return VpReal();
  const u64 um = uabs(m);
  const int sign = x.sign() * sgn(m);
  const auto& d = x.digits();
  if (um >> 32) {
    return finish(sign, x.exponent() + 2,
                  mag_mul(d, {static_cast<Limb>(um >> 32), static_cast<Limb>(um)}), ctx);
  }
  std::vector<Limb> out(d.size() + 1);
  u64 carry = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    u64 cur = u64{d[i]} * um + carry;
    out[i + 1] = static_cast<Limb>(cur);
    carry = cur >> 32;
  }
  out[0] = static_cast<Limb>(carry);
  counters().digit_ops += d.size();
  return finish(sign, x.exponent() + 1, std::move(out), ctx);
}

VpReal div_small(const VpReal& x, std::int64_t m, const Context& ctx) {
  ++counters().div_small;
  if (m == 0) throw DivisionByZero("division by zero");
  if (x.is_zero()) return VpReal();
  const u64 um = uabs(m);
  const int sign = x.sign() * sgn(m);
  const auto& d = x.digits();
  const std::size_t want = static_cast<std::size_t>(ctx.digits()) + 1;
  std::vector<Limb> q;
  q.reserve(d.size() + want);
  std::size_t significant = 0;
  u128 rem = 0;
  for (std::size_t i = 0;; ++i) {
    if (i >= d.size() && rem == 0) break;
    if (significant >= want) break;
    rem = (rem << 32) | (i < d.size() ? d[i] : 0u);
    auto qd = static_cast<Limb>(rem / um);
    rem %= um;
    q.push_back(qd);
    if (significant > 0 || qd != 0) ++significant;
  }
  counters().digit_ops += q.size();
  return finish(sign, x.exponent(), std::move(q), ctx);
}

VpReal mul_div_small(const VpReal& x, std::int64_t m, const Context& ctx, bool divide) {
  return divide ? div_small(x, m, ctx) : mul_small(x, m, ctx);
}

VpReal pow_uint(const VpReal& x, std::uint64_t k, const Context& ctx) {
  VpReal result = from_int(1);
  VpReal base = x;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? round(base, ctx) : mul(result, base, ctx);
      first = false;
    }
    k >>= 1;
    if (k > 0) base = mul(base, base, ctx);
  }
  return result;
}

VpReal div(const VpReal& x, const VpReal& y, const Context& ctx) {
  ++counters().div;
  if (y.is_zero()) throw DivisionByZero("division by zero");
  if (x.is_zero()) return VpReal();
  const auto& yd = y.digits();
  // Divisors that are a small integer times a power of β take the linear path.
  if (yd.size() == 1 || (yd.size() == 2 && yd[0] < kHalf)) {
    std::int64_t iv = yd.size() == 1 ? yd[0] : static_cast<std::int64_t>((u64{yd[0]} << 32) | yd[1]);
    VpReal q = div_small(x, y.sign() * iv, ctx);
    return scale2(q, -32 * (y.exponent() - y.size()));
  }
  VpReal inv = newton::inv_root(y.abs(), 1, ctx.precision_bits() + 8);
  VpReal r = mul(x, inv, ctx);
  return y.sign() < 0 ? -r : r;
}

int compare_abs(const VpReal& x, const VpReal& y) noexcept {
  if (x.is_zero() || y.is_zero()) return (!x.is_zero()) - (!y.is_zero());
  if (x.exponent() != y.exponent()) return x.exponent() > y.exponent() ? 1 : -1;
  const auto& a = x.digits();
  const auto& b = y.digits();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return (a.size() > n) - (b.size() > n);
}

int compare(const VpReal& x, const VpReal& y) noexcept {
  if (x.sign() != y.sign()) return x.sign() > y.sign() ? 1 : -1;
  return x.sign() >= 0 ? compare_abs(x, y) : -compare_abs(x, y);
}

Scaled to_scaled(const VpReal& x) noexcept {
  if (x.is_zero()) return Scaled{};
  const auto& d = x.digits();
  const std::size_t k = std::min<std::size_t>(3, d.size());
  double m = 0.0;
  for (std::size_t i = 0; i < k; ++i) m = m * 4294967296.0 + d[i];
  return Scaled::make(x.sign() * m, 32 * (x.exponent() - static_cast<std::int64_t>(k)));
}

double to_double(const VpReal& x) noexcept {
  Scaled s = to_scaled(x);
  if (s.e > 2000) return s.m > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
  if (s.e < -2000) return 0.0 * s.m;
  return s.to_double();
}

double log2_abs(const VpReal& x) noexcept { return to_scaled(x).log2_abs(); }

std::int64_t ilog2_abs(const VpReal& x) {
  if (x.is_zero()) throw DomainError("log of zero");
  return 32 * (x.exponent() - 1) + (31 - std::countl_zero(x.digits()[0]));
}

bool is_integer(const VpReal& x) noexcept {
  return x.is_zero() || x.exponent() - x.size() >= 0;
}

std::int64_t to_int64(const VpReal& x) {
  if (x.is_zero() || x.exponent() <= 0) return 0;
  if (x.exponent() > 2) throw OverflowError("value exceeds int64 range");
  u64 v = 0;
  for (std::int64_t i = 0; i < x.exponent(); ++i) {
    v = (v << 32) | (i < x.size() ? x.digits()[static_cast<std::size_t>(i)] : 0u);
  }
  const u64 lim = x.sign() < 0 ? (u64{1} << 63) : (u64{1} << 63) - 1;
  if (v > lim) throw OverflowError("value exceeds int64 range");
  return x.sign() < 0 ? static_cast<std::int64_t>(u64{0} - v) : static_cast<std::int64_t>(v);
}

namespace {
constexpr int kIdentical = 1 << 20;
}

int agreement_bits(const VpReal& a, const VpReal& b) {
  if (a == b) return kIdentical;
  VpReal d = sub(a, b, Context(4));
  const VpReal& big = compare_abs(a, b) >= 0 ? a : b;
  double bits = log2_abs(big) - log2_abs(d);
  return std::max(0, static_cast<int>(std::floor(bits)));
}

int absolute_agreement_bits(const VpReal& a, const VpReal& b) {
  if (a == b) return kIdentical;
  VpReal d = sub(a, b, Context(4));
  double bits = -log2_abs(d);
  if (bits > kIdentical) return kIdentical;
  return static_cast<int>(std::floor(bits));
}

}  // namespace vp
