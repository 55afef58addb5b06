#include "vp/complex.hpp"

#include "vp/newton.hpp"

namespace vp {

VpComplex add(const VpComplex& z, const VpComplex& w, const Context& ctx) {
  return {add(z.re, w.re, ctx), add(z.im, w.im, ctx)};
}

VpComplex sub(const VpComplex& z, const VpComplex& w, const Context& ctx) {
  return {sub(z.re, w.re, ctx), sub(z.im, w.im, ctx)};
}

VpComplex mul(const VpComplex& z, const VpComplex& w, const Context& ctx) {
  Context g(ctx.digits() + 1);
  VpReal rr = mul(z.re, w.re, g);
  VpReal ii = mul(z.im, w.im, g);
  VpReal ri = mul(z.re, w.im, g);
  VpReal ir = mul(z.im, w.re, g);
  return {sub(rr, ii, ctx), add(ri, ir, ctx)};
}

VpComplex mul(const VpComplex& z, const VpReal& r, const Context& ctx) {
  return {mul(z.re, r, ctx), mul(z.im, r, ctx)};
}

VpComplex conj(const VpComplex& z) { return {z.re, -z.im}; }

VpReal norm2(const VpComplex& z, const Context& ctx) {
  Context g(ctx.digits() + 1);
  return add(square(z.re, g), square(z.im, g), ctx);
}

VpReal abs(const VpComplex& z, const Context& ctx) {
  if (z.im.is_zero()) return round(z.re.abs(), ctx);
  if (z.re.is_zero()) return round(z.im.abs(), ctx);
  Context g(ctx.digits() + 1);
  return round(newton::sqrt(norm2(z, g), g.precision_bits()), ctx);
}

VpComplex div(const VpComplex& z, const VpComplex& w, const Context& ctx) {
  if (w.re.is_zero() && w.im.is_zero()) throw DivisionByZero("complex division by zero");
  Context g(ctx.digits() + 1);
  VpReal d = norm2(w, g);
  VpComplex num = mul(z, conj(w), g);
  return {div(num.re, d, ctx), div(num.im, d, ctx)};
}

VpComplex pow_int(const VpComplex& z, std::int64_t k, const Context& ctx) {
  Context g(ctx.digits() + 1);
  std::uint64_t e = k < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
  VpComplex result{from_int(1), VpReal()};
  VpComplex base = z;
  while (e > 0) {
    if (e & 1) result = mul(result, base, g);
    e >>= 1;
    if (e > 0) base = mul(base, base, g);
  }
  if (k < 0) return div(VpComplex{from_int(1), VpReal()}, result, ctx);
  return round(result, ctx);
}

VpComplex round(const VpComplex& z, const Context& ctx) { return {round(z.re, ctx), round(z.im, ctx)}; }

}  // namespace vp
