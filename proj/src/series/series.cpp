#include "vp/series.hpp"

#include <algorithm>
#include <cmath>

#include "vp/agm.hpp"
#include "vp/cache.hpp"
#include "vp/newton.hpp"

namespace vp::series {

namespace {

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

// Relative precision a term of magnitude 2^term_log2 needs so that its
// absolute error stays below 2^(−nw).
int term_bits(int nw, double term_log2) {
  double b = nw + term_log2 + 12;
  return static_cast<int>(std::clamp(b, 16.0, static_cast<double>(nw)));
}

double log2_max(const VpComplex& z) { return std::max(log2_abs(z.re), log2_abs(z.im)); }

VpReal two_over_sqrt_pi(int n) {
  Context ctx = Context::for_bits(n + 4);
  VpReal r = newton::inv_root(agm::pi(n + 8), 2, n + 4);
  return round(mul_small(r, 2, ctx), Context::for_bits(n));
}

}  // namespace

int kernel_work_bits(int n) { return n + ceil_log2(std::max(n, 1)) + 4; }

std::int64_t iteration_cap(int work_bits) { return 64 + 4 * static_cast<std::int64_t>(work_bits); }

VpReal exp_reduced(const VpReal& x, int n, SeriesRun* run) {
  if (compare_abs(x, from_int(1)) > 0) throw DomainError("exp_reduced needs |x| ≤ 1");
  const int nw = kernel_work_bits(n);
  const Context ctx = Context::for_bits(nw);
  VpReal sum = from_int(1);
  VpReal term = from_int(1);
  double max_log2 = 0.0;
  const std::int64_t cap = iteration_cap(nw);
  std::int64_t j = 1;
  if (!x.is_zero()) {
    for (;; ++j) {
      if (j > cap) throw InternalError("exp series exceeded its iteration cap");
      const Context tc = Context::for_bits(term_bits(nw, log2_abs(term)));
      term = div_small(mul(term, round(x, tc), tc), j, tc);
      sum = add(sum, term, ctx);
      const double tl = log2_abs(term);
      max_log2 = std::max(max_log2, tl);
      if (tl < -nw) break;
    }
  }
  if (run) {
    run->terms_used = j;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = nw;
  }
  return round(sum, Context::for_bits(n + 2));
}

VpComplex exp_reduced(const VpComplex& z, int n, SeriesRun* run) {
  const double mod2 = to_double(norm2(z, Context(4)));
  if (mod2 > 1.0 + 1e-9) throw DomainError("exp_reduced needs |z| ≤ 1");
  const int nw = kernel_work_bits(n);
  const Context ctx = Context::for_bits(nw);
  VpComplex sum{from_int(1), VpReal()};
  VpComplex term{from_int(1), VpReal()};
  double max_log2 = 0.0;
  const std::int64_t cap = iteration_cap(nw);
  std::int64_t j = 1;
  if (!(z.re.is_zero() && z.im.is_zero())) {
    for (;; ++j) {
      if (j > cap) throw InternalError("complex exp series exceeded its iteration cap");
      const Context tc = Context::for_bits(term_bits(nw, log2_max(term)));
      VpComplex p = mul(term, round(z, tc), tc);
      term = {div_small(p.re, j, tc), div_small(p.im, j, tc)};
      sum = add(sum, term, ctx);
      const double tl = log2_max(term);
      max_log2 = std::max(max_log2, tl);
      if (tl < -nw) break;
    }
  }
  if (run) {
    run->terms_used = j;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = nw;
  }
  return round(sum, Context::for_bits(n + 2));
}

int halving_count(const VpReal& x, int n, double c) {
  int k = static_cast<int>(std::floor(c * std::sqrt(static_cast<double>(std::max(n, 1)))));
  if (!x.is_zero()) {
    double l = log2_abs(x);
    if (l > 0) k += static_cast<int>(std::ceil(l));
  }
  return std::max(0, k);
}

VpReal exp(const VpReal& x, int n, const ExpOptions& options, RunInfo* info) {
  if (n < 1) n = 1;
  if (x.is_zero()) return from_int(1);
  if (x.sign() < 0) {
    VpReal r = exp(-x, n + 2, options, info);
    return div(from_int(1), r, Context::for_bits(n));
  }
  // The result exponent in bits is about x·log2 e.
  if (log2_abs(x) > 40 || to_double(x) * 1.4426950408889634 > 32.0 * static_cast<double>(kMaxExponent)) {
    throw OverflowError("exp argument too large");
  }
  const int k = halving_count(x, n, options.halving_c);
  const int nw = n + k + ceil_log2(k + 1) + 4;
  SeriesRun run;
  VpReal r = exp_reduced(scale2(x, -k), nw, &run);
  const Context wc = Context::for_bits(nw);
  for (int i = 0; i < k; ++i) r = square(r, wc);
  if (info) {
    info->method = "taylor";
    info->terms = run.terms_used;
    info->work_bits = run.work_precision_bits;
    info->note("halvings", std::to_string(k));
  }
  return round(r, Context::for_bits(n));
}

VpReal exp_taylor(const VpReal& x, const Context& ctx, SeriesRun* run) {
  const int p = ctx.precision_bits();
  VpReal sum = from_int(1);
  VpReal term = from_int(1);
  double max_log2 = 0.0;
  const double ax = std::fabs(to_double(x));
  const std::int64_t cap = iteration_cap(p) + static_cast<std::int64_t>(4 * ax);
  std::int64_t j = 1;
  if (!x.is_zero()) {
    for (;; ++j) {
      if (j > cap) throw InternalError("exp series exceeded its iteration cap");
      term = div_small(mul(term, x, ctx), j, ctx);
      sum = add(sum, term, ctx);
      const double tl = log2_abs(term);
      max_log2 = std::max(max_log2, tl);
      if (static_cast<double>(j) > ax && (term.is_zero() || tl < log2_abs(sum) - p - 2)) break;
    }
  }
  if (run) {
    run->terms_used = j;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = p;
  }
  return sum;
}

VpReal erf_alternating(const VpReal& x, int n, SeriesRun* run) {
  if (compare_abs(x, from_int(1)) > 0) throw DomainError("alternating erf series needs |x| ≤ 1");
  if (x.is_zero()) return VpReal();
  const double xd = to_double(x);
  const int guard = static_cast<int>(std::ceil(xd * xd * 1.4426950408889634)) + ceil_log2(std::max(n, 1)) + 4;
  const int nw = n + guard;
  const Context ctx = Context::for_bits(nw);
  const VpReal x2 = mul(x, x, ctx);
  // P_j = x^(2j+1)/j! with alternating sign; the term is P_j/(2j+1).
  VpReal p = round(x, ctx);
  VpReal sum = p;
  const double stop = -nw + log2_abs(x);
  double max_log2 = log2_abs(x);
  const std::int64_t cap = iteration_cap(nw);
  std::int64_t j = 1;
  for (;; ++j) {
    if (j > cap) throw InternalError("erf series exceeded its iteration cap");
    p = -div_small(mul(p, x2, ctx), j, ctx);
    VpReal term = div_small(p, 2 * j + 1, ctx);
    sum = add(sum, term, ctx);
    const double tl = log2_abs(term);
    max_log2 = std::max(max_log2, tl);
    if (term.is_zero() || tl < stop) break;
  }
  if (run) {
    run->terms_used = j + 1;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = nw;
  }
  return round(mul(sum, two_over_sqrt_pi(nw), ctx), Context::for_bits(n));
}

VpReal erf_positive(const VpReal& x, int n, SeriesRun* run) {
  if (x.is_zero()) return VpReal();
  if (x.sign() < 0) return -erf_positive(-x, n, run);
  const int nw = n + ceil_log2(std::max(n, 1)) + 6;
  const Context ctx = Context::for_bits(nw);
  const VpReal x2 = mul(x, x, ctx);
  const VpReal two_x2 = mul_small(x2, 2, ctx);
  const double x2d = to_double(x2);
  // U_0 = x, U_j = U_{j−1}·2x²/(2j+1); every term is positive.
  VpReal u = round(x, ctx);
  VpReal sum = u;
  double max_log2 = log2_abs(u);
  const std::int64_t cap = iteration_cap(nw) + static_cast<std::int64_t>(4 * x2d);
  std::int64_t j = 1;
  for (;; ++j) {
    if (j > cap) throw InternalError("erf series exceeded its iteration cap");
    u = div_small(mul(u, two_x2, ctx), 2 * j + 1, ctx);
    sum = add(sum, u, ctx);
    const double tl = log2_abs(u);
    max_log2 = std::max(max_log2, tl);
    if (static_cast<double>(j) > x2d && tl < log2_abs(sum) - nw) break;
  }
  if (run) {
    run->terms_used = j + 1;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = nw;
  }
  VpReal e = exp(-x2, nw);
  VpReal r = mul(mul(sum, e, ctx), two_over_sqrt_pi(nw), ctx);
  return round(r, Context::for_bits(n));
}

double erf_saturation_point(int n) { return std::sqrt((n + 2) * 0.69314718055994531); }

VpReal erf(const VpReal& x, int n, RunInfo* info) {
  if (n < 1) n = 1;
  if (x.is_zero()) return VpReal();
  SeriesRun run;
  VpReal r;
  std::string method;
  if (compare_abs(x, from_int(1)) <= 0) {
    r = erf_alternating(x, n, &run);
    method = "alternating";
  } else if (std::fabs(to_double(x)) < erf_saturation_point(n)) {
    r = erf_positive(x, n, &run);
    method = "positive";
  } else {
    r = from_int(x.sign());
    method = "saturated";
  }
  if (info) {
    info->method = method;
    info->terms = run.terms_used;
    info->work_bits = run.work_precision_bits;
  }
  return r;
}

std::int64_t gamma_parameter(int n) {
  return static_cast<std::int64_t>(std::ceil((n + 6) * 0.69314718055994531));
}

VpReal euler_gamma_series(int n, std::int64_t X, SeriesRun* run) {
  if (X < 1) throw DomainError("gamma series parameter must be positive");
  const int nw = n + ceil_log2(std::max(n, 1)) + 6;
  const Context ctx = Context::for_bits(nw);
  // A_j = X^j/j!, B_j = H_j·X^j/j! = (B_{j−1} + A_{j−1}/j)·X/j.
  VpReal a = from_int(1);
  VpReal b;
  VpReal sum;
  double max_log2 = -std::numeric_limits<double>::infinity();
  const std::int64_t cap = iteration_cap(nw) + 8 * X;
  std::int64_t j = 1;
  for (;; ++j) {
    if (j > cap) throw InternalError("gamma series exceeded its iteration cap");
    b = div_small(mul_small(add(b, div_small(a, j, ctx), ctx), X, ctx), j, ctx);
    a = div_small(mul_small(a, X, ctx), j, ctx);
    sum = add(sum, b, ctx);
    const double tl = log2_abs(b);
    max_log2 = std::max(max_log2, tl);
    if (j > X && tl < log2_abs(sum) - nw - 2) break;
  }
  if (run) {
    run->terms_used = j;
    run->max_term_log2 = max_log2;
    run->work_precision_bits = nw;
  }
  VpReal e = mul(sum, exp(from_int(-X), nw), ctx);
  VpReal g = sub(e, newton::ln(from_int(X), nw), ctx);
  return round(g, Context::for_bits(n));
}

VpReal euler_gamma(int n) {
  return ConstantCache::global().constant("gamma", n, [](int bits) {
    return euler_gamma_series(bits + 4, gamma_parameter(bits + 4));
  });
}

}  // namespace vp::series
