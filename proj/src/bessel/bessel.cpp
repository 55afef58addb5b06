#include "vp/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace vp::bessel {

namespace {

constexpr double kLog2e = 1.4426950408889634;

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

}  // namespace

VpReal j_series(std::int64_t nu, const VpReal& x, int n, RunInfo* info) {
  if (nu < 0) throw DomainError("j_series needs ν ≥ 0");
  if (x.sign() < 0) throw DomainError("j_series needs x ≥ 0");
  if (x.is_zero()) return nu == 0 ? from_int(1) : VpReal();
  const double xv = to_double(x);
  // The largest term exceeds the sum by up to e^x.
  const int nw = n + static_cast<int>(std::ceil(xv * kLog2e)) + ceil_log2(std::max(n, 1)) + 4;
  const Context ctx = Context::for_bits(nw);
  const VpReal h = scale2(x, -1);
  VpReal term = pow_uint(round(h, ctx), static_cast<std::uint64_t>(nu), ctx);
  for (std::int64_t i = 2; i <= nu; ++i) term = div_small(term, i, ctx);
  const VpReal q = -square(h, ctx);
  VpReal sum = term;
  const std::int64_t cap = 64 + 4 * static_cast<std::int64_t>(nw) + static_cast<std::int64_t>(xv);
  std::int64_t j = 0;
  for (;;) {
    ++j;
    if (j > cap) throw InternalError("Bessel series exceeded its iteration cap");
    term = div_small(mul(term, q, ctx), j * (nu + j), ctx);
    sum = add(sum, term, ctx);
    if (2.0 * static_cast<double>(j) > xv && (term.is_zero() || log2_abs(term) < -nw)) break;
  }
  if (info) {
    info->method = "series";
    info->terms = j;
    info->work_bits = nw;
  }
  return round(sum, Context::for_bits(n + 2));
}

std::int64_t start_index(std::int64_t nu, const VpReal& x, int n) {
  if (x.sign() <= 0) throw DomainError("start index needs x > 0");
  const double xv = to_double(x);
  const double target = (n + ceil_log2(std::max(n, 1)) + 4) * std::log(2.0);
  auto ok = [&](std::int64_t N) {
    const double d = static_cast<double>(N);
    return d * std::log(2 * d / (std::exp(1.0) * xv)) > target;
  };
  std::int64_t lo = std::max<std::int64_t>(nu, static_cast<std::int64_t>(std::ceil(xv))) + 1;
  if (ok(lo)) return lo;
  std::int64_t hi = 2 * lo;
  while (!ok(hi)) {
    lo = hi;
    hi *= 2;
  }
  // ok(hi) and !ok(lo)
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

VpReal j_backward_from(std::int64_t nu, const VpReal& x, int n, std::int64_t N, MillerRun* run) {
  if (nu < 0) throw DomainError("j_backward needs ν ≥ 0");
  if (x.sign() <= 0) throw DomainError("j_backward needs x > 0");
  if (N <= std::max<std::int64_t>(nu, static_cast<std::int64_t>(std::ceil(to_double(x))))) {
    throw DomainError("start index must exceed max(ν, ⌈x⌉)");
  }
  const int nw = n + ceil_log2(N) + 8;
  const Context ctx = Context::for_bits(nw);
  const VpReal r = div(from_int(2), x, ctx);
  VpReal y1 = from_int(1);  // y_k
  VpReal y2;                // y_{k+1}
  VpReal even;              // Σ_{m≥1} y_{2m}
  VpReal ynu = nu == N ? y1 : VpReal();
  if (N % 2 == 0) even = y1;
  std::vector<VpReal> trial;
  if (run) {
    trial.resize(static_cast<std::size_t>(N) + 1);
    trial[N] = y1;
  }
  for (std::int64_t k = N; k >= 1; --k) {
    VpReal y0 = sub(mul_small(mul(r, y1, ctx), k, ctx), y2, ctx);
    const std::int64_t idx = k - 1;
    if (idx == nu) ynu = y0;
    if (idx >= 2 && idx % 2 == 0) even = add(even, y0, ctx);
    if (run) trial[idx] = y0;
    y2 = std::move(y1);
    y1 = std::move(y0);
  }
  // y1 = y_0
  VpReal norm = add(y1, scale2(even, 1), ctx);
  if (norm.is_zero()) throw InternalError("Bessel normalization sum vanished");
  VpReal v = div(ynu, norm, ctx);
  if (run) {
    run->start_index_N = N;
    run->trial_values = std::move(trial);
    run->norm = norm;
  }
  return round(v, Context::for_bits(n + 2));
}

VpReal j_backward(std::int64_t nu, const VpReal& x, int n, MillerRun* run) {
  return j_backward_from(nu, x, n, start_index(nu, x, n), run);
}

VpReal j(std::int64_t nu, const VpReal& x, int n, RunInfo* info) {
  int sign = 1;
  // J_{−ν} = (−1)^ν J_ν and J_ν(−x) = (−1)^ν J_ν(x)
  if (nu < 0) {
    nu = -nu;
    if (nu % 2) sign = -sign;
  }
  VpReal ax = x;
  if (x.sign() < 0) {
    ax = -x;
    if (nu % 2) sign = -sign;
  }
  VpReal v;
  if (ax.is_zero()) {
    v = nu == 0 ? from_int(1) : VpReal();
    if (info) info->method = "series";
  } else if (to_double(ax) <= std::max(4.0, n / 8.0)) {
    v = j_series(nu, ax, n, info);
  } else {
    const std::int64_t N = start_index(nu, ax, n);
    v = j_backward_from(nu, ax, n, N);
    if (info) {
      info->method = "backward";
      info->terms = N;
      info->work_bits = n + ceil_log2(N) + 8;
    }
  }
  return sign < 0 ? -v : v;
}

}  // namespace vp::bessel
