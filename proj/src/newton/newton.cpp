#include "vp/newton.hpp"

#include <algorithm>
#include <cmath>

#include "vp/cache.hpp"
#include "vp/series.hpp"
#include "vp/stats.hpp"

namespace vp::newton {

namespace {

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

// Newton on f(x) = y·exp(−x) − 1 with no range reduction. abs_bits is the
// absolute precision wanted; seed_abs_bits the absolute accuracy of x0.
VpReal ln_newton(const VpReal& y, VpReal x, int abs_bits, int seed_abs_bits, NewtonTrace* trace) {
  DoublingSchedule sched = DoublingSchedule::make(abs_bits, seed_abs_bits, 4);
  std::vector<int> stages = sched.stage_precisions;
  stages.push_back(abs_bits);
  const VpReal one = from_int(1);
  for (int p : stages) {
    CounterScope scope;
    Context ctx = Context::for_bits(p);
    VpReal e = series::exp(-x, p + 2);
    VpReal corr = sub(mul(round(y, ctx), e, ctx), one, ctx);
    x = add(x, corr, ctx);
    if (trace) {
      trace->stages.push_back({p, scope.delta().digit_ops});
      trace->total_digit_ops += scope.delta().digit_ops;
    }
  }
  return x;
}

}  // namespace

DoublingSchedule DoublingSchedule::make(int target_bits, int seed_bits, int slack) {
  DoublingSchedule s;
  s.seed_precision = seed_bits;
  int p = target_bits;
  while (p > seed_bits) {
    s.stage_precisions.push_back(p);
    int next = (p + 1) / 2 + slack;
    if (next >= p) break;
    p = next;
  }
  if (s.stage_precisions.empty()) s.stage_precisions.push_back(std::max(target_bits, 1));
  std::reverse(s.stage_precisions.begin(), s.stage_precisions.end());
  return s;
}

VpReal inv_root(const VpReal& y, std::int64_t m, int n, NewtonTrace* trace) {
  if (y.sign() <= 0) throw DomainError("inv_root needs y > 0");
  if (m < 1) throw DomainError("inv_root needs m ≥ 1");
  if (n < 1) n = 1;

  // y = f·2^e with f in [1, 2); e = m·q + r, so y^(−1/m) = (f·2^r)^(−1/m)·2^(−q).
  const std::int64_t e = ilog2_abs(y);
  std::int64_t q = e >= 0 ? e / m : -((-e + m - 1) / m);
  const VpReal yr = scale2(y, -m * q);
  if (yr == from_int(1)) return power_of_two(-q);

  double seed = std::pow(to_double(yr), -1.0 / static_cast<double>(m));
  VpReal x = from_double(seed);

  const int pf = n + ceil_log2(m) + 6;
  const int slack = ceil_log2(m + 1) + 2;
  DoublingSchedule sched = DoublingSchedule::make(pf, 48, slack);
  std::vector<int> stages = sched.stage_precisions;
  stages.push_back(pf);

  const VpReal one = from_int(1);
  for (int p : stages) {
    CounterScope scope;
    Context ctx = Context::for_bits(p);
    VpReal yp = round(yr, ctx);
    VpReal xm = pow_uint(x, static_cast<std::uint64_t>(m), ctx);
    VpReal resid = sub(one, mul(xm, yp, ctx), ctx);
    x = add(x, div_small(mul(x, resid, ctx), m, ctx), ctx);
    if (trace) {
      std::uint64_t ops = scope.delta().digit_ops;
      trace->stages.push_back({p, ops});
      trace->total_digit_ops += ops;
    }
  }
  return round(scale2(x, -q), Context::for_bits(n));
}

std::vector<double> inv_root_fixed_precision(const VpReal& y, std::int64_t m, const VpReal& x0,
                                             int p, int iterations) {
  if (y.sign() <= 0) throw DomainError("inv_root needs y > 0");
  Context ctx = Context::for_bits(p);
  Context wide(ctx.digits() + 2);
  const VpReal one = from_int(1);
  VpReal yp = round(y, ctx);
  VpReal x = round(x0, ctx);
  std::vector<double> out;
  auto residual = [&]() {
    VpReal r = sub(mul(pow_uint(x, static_cast<std::uint64_t>(m), wide), yp, wide), one, wide);
    return log2_abs(r);
  };
  out.push_back(residual());
  for (int i = 0; i < iterations; ++i) {
    VpReal xm = pow_uint(x, static_cast<std::uint64_t>(m), ctx);
    VpReal resid = sub(one, mul(xm, yp, ctx), ctx);
    x = add(x, div_small(mul(x, resid, ctx), m, ctx), ctx);
    out.push_back(residual());
  }
  return out;
}

VpReal sqrt(const VpReal& y, int n) {
  if (y.sign() < 0) throw DomainError("sqrt needs y ≥ 0");
  if (y.is_zero()) return VpReal();
  VpReal r = inv_root(y, 2, n + 4);
  return mul(y, r, Context::for_bits(n));
}

VpReal ln(const VpReal& y, int n, NewtonTrace* trace) {
  if (y.sign() <= 0) throw DomainError("ln needs y > 0");
  if (n < 1) n = 1;
  const VpReal one = from_int(1);
  if (y == one) return VpReal();

  // y' = y·2^(−k) in [2/3, 4/3).
  const std::int64_t k =
      static_cast<std::int64_t>(std::floor(log2_abs(y) + 0.58496250072115619));
  const VpReal yr = scale2(y, -k);
  const VpReal d = sub(yr, one, Context(4));
  if (d.is_zero()) {
    Context ctx = Context::for_bits(n + 4);
    return round(mul_small(ln2(n + 4 + ceil_log2(std::abs(k) + 1)), k, ctx), Context::for_bits(n));
  }
  // Near 1 the result is about y' − 1, so a relative target needs extra
  // absolute bits when k = 0.
  const int rel_guard = k == 0 ? std::max(0, static_cast<int>(std::ceil(-log2_abs(d)))) : 0;
  const int abs_bits = n + rel_guard + 6;
  VpReal x0 = from_double(std::log1p(to_double(d)));
  VpReal x = ln_newton(yr, x0, abs_bits, 48 + rel_guard, trace);
  if (k == 0) return round(x, Context::for_bits(n));
  const int lb = n + 6 + ceil_log2(std::abs(k) + 1);
  Context ctx = Context::for_bits(lb);
  return round(add(x, mul_small(ln2(lb), k, ctx), ctx), Context::for_bits(n));
}

VpReal ln2(int n) {
  return ConstantCache::global().constant("ln2", n, [](int bits) {
    const VpReal half = VpReal::from_parts(1, 0, {0x80000000u});
    VpReal x = ln_newton(half, from_double(std::log(0.5)), bits + 8, 48, nullptr);
    return round(-x, Context::for_bits(bits));
  });
}

}  // namespace vp::newton
