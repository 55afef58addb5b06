#include "vp/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vp/bernoulli.hpp"
#include "vp/newton.hpp"
#include "vp/series.hpp"

namespace vp::zeta {

namespace {

constexpr double kLn2 = 0.6931471805599453;

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

void require_not_pole(const VpReal& s) {
  if (s == from_int(1)) throw DomainError("ζ(s) has a pole at s = 1");
}

bool nonpositive_integer(const VpReal& s) { return s.sign() <= 0 && is_integer(s); }

// log2 |C_k| for k = 1..kmax from a 64-bit table.
std::vector<double> scaled_log2(int kmax) {
  std::vector<VpReal> c = bernoulli::stable_cached(kmax, 64);
  std::vector<double> out(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) out[k - 1] = log2_abs(c[k - 1]);
  return out;
}

// j^(−s) = exp(−s·ln j)
VpReal pow_neg(const VpReal& s, std::int64_t j, int nw) {
  if (j == 1 || s.is_zero()) return from_int(1);
  const double arg = std::fabs(to_double(s)) * std::log(static_cast<double>(j));
  const int extra = static_cast<int>(std::ceil(std::log2(arg + 1))) + 2;
  const Context ctx = Context::for_bits(nw + extra);
  VpReal l = newton::ln(from_int(j), nw + extra);
  return series::exp(-mul(s, l, ctx), nw);
}

}  // namespace

std::vector<double> term_magnitudes(const VpReal& s, std::int64_t p, int kmax) {
  const double sigma = to_double(s);
  const double lp = std::log2(static_cast<double>(p));
  std::vector<double> c = scaled_log2(kmax);
  std::vector<double> out(static_cast<std::size_t>(kmax));
  double prod = 0.0;  // Σ_{i=0}^{2k−2} log2 |s+i|
  for (int k = 1; k <= kmax; ++k) {
    for (int i = (k == 1 ? 0 : 2 * k - 3); i <= 2 * k - 2; ++i) prod += std::log2(std::fabs(sigma + i));
    out[k - 1] = c[k - 1] + (1 - sigma - 2 * k) * lp + prod;
  }
  return out;
}

EmParams choose_params(const VpReal& s, int n, std::int64_t p_min) {
  require_not_pole(s);
  if (nonpositive_integer(s)) {
    // Every T_{k,1} with 2k − 2 ≥ q carries the factor s + q = 0.
    const std::int64_t q = -to_int64(s);
    EmParams e;
    e.p = 1;
    e.m = static_cast<int>((q + 1) / 2);
    e.err_bound_log2 = -std::numeric_limits<double>::infinity();
    return e;
  }
  const double sigma = to_double(s);
  const double stop = -static_cast<double>(n) - 2;
  std::int64_t p = std::max<std::int64_t>(
      10, static_cast<std::int64_t>(std::ceil(n * kLn2 / (2 * M_PI))) +
              static_cast<std::int64_t>(std::ceil(std::fabs(sigma) / 2)));
  p = std::max(p, p_min);
  // σ > −(2m+1)
  const int m_min = sigma > -1 ? 0 : static_cast<int>(std::floor((-sigma - 1) / 2)) + 1;
  const std::int64_t p_cap = (std::int64_t{1} << 16) + static_cast<std::int64_t>(n) * n;
  for (;;) {
    if (p > p_cap) throw InsufficientPrecision("Euler–Maclaurin parameter search exceeded p = 2^16 + n²");
    // The terms decrease until k ≈ πp.
    const int kmax = static_cast<int>(std::ceil(M_PI * static_cast<double>(p))) + m_min + 8;
    std::vector<double> t = term_magnitudes(s, p, kmax);
    for (int k = 1; k <= kmax; ++k) {
      // t[k−1] bounds the remainder after m = k − 1 terms.
      if (k - 1 >= m_min && t[k - 1] <= stop) {
        EmParams e;
        e.p = p;
        e.m = k - 1;
        e.err_bound_log2 = t[k - 1];
        return e;
      }
      if (k >= 2 && k - 1 > m_min && t[k - 1] > t[k - 2]) break;
    }
    p *= 2;
  }
}

VpReal em_term(const VpReal& s, std::int64_t p, int k, int n) {
  if (k < 1) throw DomainError("Euler–Maclaurin terms start at k = 1");
  const int nw = n + ceil_log2(2 * k) + 8;
  const Context ctx = Context::for_bits(nw);
  VpReal u = div_small(mul(s, pow_neg(s, p, nw), ctx), p, ctx);
  for (int i = 2; i <= k; ++i) {
    u = mul(u, add(s, from_int(2 * i - 3), ctx), ctx);
    u = mul(u, add(s, from_int(2 * i - 2), ctx), ctx);
    u = div_small(div_small(u, p, ctx), p, ctx);
  }
  std::vector<VpReal> c = bernoulli::stable_cached(k, nw);
  return round(mul(c[k - 1], u, ctx), Context::for_bits(n));
}

VpReal zeta_with_params(const VpReal& s, int n, const EmParams& params, RunInfo* info) {
  require_not_pole(s);
  if (params.p < 1 || params.m < 0) throw DomainError("Euler–Maclaurin needs p ≥ 1 and m ≥ 0");
  const double sigma = to_double(s);
  const std::int64_t p = params.p;
  const int m = params.m;
  // Absolute error 2^(−n) on pieces as large as p^(1−σ)·|s|.
  const double mag = std::max(0.0, (1 - sigma) * std::log2(static_cast<double>(p)) + std::log2(std::fabs(sigma) + 2));
  const int nw = n + static_cast<int>(std::ceil(mag)) + ceil_log2(p + 1) + 2 * ceil_log2(m + 1) + 8;
  const Context ctx = Context::for_bits(nw);

  VpReal sum;
  for (std::int64_t j = 1; j < p; ++j) sum = add(sum, pow_neg(s, j, nw), ctx);
  const VpReal ps = pow_neg(s, p, nw);
  sum = add(sum, scale2(ps, -1), ctx);
  sum = add(sum, div(mul_small(ps, p, ctx), sub(s, from_int(1), ctx), ctx), ctx);

  if (m > 0) {
    std::vector<VpReal> c = bernoulli::stable_cached(m, nw);
    VpReal u = div_small(mul(s, ps, ctx), p, ctx);
    for (int k = 1; k <= m; ++k) {
      if (k >= 2) {
        u = mul(u, add(s, from_int(2 * k - 3), ctx), ctx);
        u = mul(u, add(s, from_int(2 * k - 2), ctx), ctx);
        u = div_small(div_small(u, p, ctx), p, ctx);
      }
      sum = add(sum, mul(c[k - 1], u, ctx), ctx);
    }
  }
  if (info) {
    info->method = "euler-maclaurin";
    info->terms = p;
    info->work_bits = nw;
    info->note("p", std::to_string(p));
    info->note("m", std::to_string(m));
    info->note("err_bound_log2", std::to_string(params.err_bound_log2));
  }
  return round(sum, Context::for_bits(n + 2));
}

VpReal zeta(const VpReal& s, int n, RunInfo* info) {
  return zeta_with_params(s, n, choose_params(s, n), info);
}

}  // namespace vp::zeta
