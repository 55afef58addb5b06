#include "vp/expint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "vp/newton.hpp"
#include "vp/series.hpp"

namespace vp::expint {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLog2e = 1.4426950408889634;
constexpr double kSeriesEdge = 0.1;
constexpr double kOverlap = 0.1;

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

double delta(int n) { return 2.0 * std::log2(static_cast<double>(std::max(n, 2))) / n; }

void require_positive(const VpReal& x) {
  if (x.sign() <= 0) throw DomainError("E1 needs x > 0");
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

E1Method region(Method tag, int n) {
  const double top = 1.0 + delta(n);
  switch (tag) {
    case Method::series:
      return {tag, 0.0, kSeriesEdge * (1 + kOverlap)};
    case Method::contfrac:
      return {tag, kSeriesEdge * (1 - kOverlap), top * (1 + kOverlap)};
    case Method::asymptotic:
      return {tag, top, std::numeric_limits<double>::infinity()};
  }
  throw InternalError("unknown E1 method");
}

std::string method_name(Method tag) {
  switch (tag) {
    case Method::series: return "series";
    case Method::contfrac: return "contfrac";
    case Method::asymptotic: return "asymptotic";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "series") return Method::series;
  if (name == "contfrac" || name == "cf") return Method::contfrac;
  if (name == "asymptotic" || name == "asym") return Method::asymptotic;
  return std::nullopt;
}

double asymptotic_threshold(int n) { return (n + 2.0 * std::log2(static_cast<double>(std::max(n, 2)))) * kLn2; }

std::optional<std::string> rejection(Method tag, const VpReal& x, int n) {
  if (x.sign() <= 0) return "E1 needs x > 0";
  const double L = n * kLn2;
  const double xv = to_double(x);
  const E1Method r = region(tag, n);
  switch (tag) {
    case Method::series:
      if (xv > r.hi * L) {
        return "series region is x ≤ 0.1·n·ln 2 (admitted up to " + fmt(r.hi * L) + ")";
      }
      break;
    case Method::contfrac:
      if (xv < r.lo * L || xv > r.hi * L) {
        return "continued-fraction region is 0.1·n·ln 2 < x < n·ln 2 + O(ln n) (admitted from " + fmt(r.lo * L) + " to " +
               fmt(r.hi * L) + ")";
      }
      break;
    case Method::asymptotic:
      if (!(xv > asymptotic_threshold(n))) {
        return "asymptotic region is x > n ln 2 + O(ln n) (limit " + fmt(asymptotic_threshold(n)) + ")";
      }
      break;
  }
  return std::nullopt;
}

Method choose_method(const VpReal& x, int n) {
  require_positive(x);
  const double xv = to_double(x);
  if (xv < kSeriesEdge * n * kLn2) return Method::series;
  // Inside the overlap band the continued fraction is cheaper and has margin.
  if (xv > asymptotic_threshold(n) * (1 + kOverlap)) return Method::asymptotic;
  return Method::contfrac;
}

VpReal e1_series(const VpReal& x, int n, const SeriesOptions& options, RunInfo* info) {
  require_positive(x);
  const double xv = to_double(x);
  int nw = n;
  if (options.cancellation_guards) {
    // Largest term over the sum is about e^x; E1(x) itself is about e^(−x)/(x+1).
    const int cancel = static_cast<int>(std::ceil(xv * kLog2e));
    const int small = xv > 1 ? static_cast<int>(std::ceil(xv * kLog2e + std::log2(xv + 1))) : 2;
    nw = n + cancel + small + ceil_log2(std::max(n, 1)) + 4;
  }
  const Context ctx = Context::for_bits(nw);
  const VpReal xr = round(x, ctx);
  VpReal a = xr;  // x^j/j!
  VpReal sum = xr;
  const std::int64_t cap = series::iteration_cap(nw) + static_cast<std::int64_t>(4 * xv);
  std::int64_t j = 1;
  for (;;) {
    ++j;
    if (j > cap) throw InternalError("E1 series exceeded its iteration cap");
    a = div_small(mul(a, xr, ctx), j, ctx);
    VpReal term = div_small(a, j, ctx);
    sum = (j % 2 == 0) ? sub(sum, term, ctx) : add(sum, term, ctx);
    if (static_cast<double>(j) > xv && log2_abs(term) < -nw) break;
  }
  VpReal g = series::euler_gamma(nw);
  VpReal l = newton::ln(x, nw + 4);
  VpReal r = sub(sub(sum, g, ctx), l, ctx);
  if (info) {
    info->method = "series";
    info->terms = j;
    info->work_bits = nw;
  }
  return round(r, Context::for_bits(n + 2));
}

VpReal e1_asymptotic(const VpReal& x, int n, RunInfo* info) {
  require_positive(x);
  if (auto why = rejection(Method::asymptotic, x, n)) throw InsufficientPrecision(*why);
  const double xv = to_double(x);
  const int nw = n + ceil_log2(std::max(n, 1)) + 4;
  const Context ctx = Context::for_bits(nw);
  const VpReal inv = div(from_int(1), x, ctx);
  const double stop = log2_abs(inv) - n - 2;
  // u_j = (−1)^(j−1)(j−1)!/x^j
  VpReal u = inv;
  VpReal sum = inv;
  const std::int64_t kmax = static_cast<std::int64_t>(std::floor(xv));
  std::int64_t j = 1;
  for (;;) {
    if (j >= kmax) {
      throw InsufficientPrecision("asymptotic expansion cannot reach " + std::to_string(n) +
                                  " bits at this x; needs x > n ln 2 + O(ln n)");
    }
    u = -mul(mul_small(u, j, ctx), inv, ctx);
    ++j;
    if (log2_abs(u) < stop) break;
    sum = add(sum, u, ctx);
  }
  VpReal r = mul(series::exp(-x, nw), sum, ctx);
  if (info) {
    info->method = "asymptotic";
    info->terms = j - 1;
    info->work_bits = nw;
  }
  return round(r, Context::for_bits(n + 2));
}

contfrac::CfStream e1_stream(const VpReal& x) {
  return {"exp(x)E1(x)", [x](std::int64_t j) {
            if (j == 1) return contfrac::CfTerm{from_int(1), x};
            return contfrac::CfTerm{from_int(j / 2), j % 2 == 0 ? from_int(1) : x};
          }};
}

VpReal e1_cf(const VpReal& x, int n, RunInfo* info) {
  require_positive(x);
  // exp(x)E1(x) > 1/(x + 1), so these bits turn absolute error into relative.
  const int g = ceil_log2(static_cast<std::int64_t>(std::ceil(to_double(x))) + 1) + 4;
  // The term count grows like (n ln 2)²/x, well past the generic cap once x
  // is small against n.
  const double nl = (n + g) * kLn2;
  const auto kmax = std::max(contfrac::default_kmax(n + g),
                             static_cast<std::int64_t>(std::ceil(nl * nl / (2 * to_double(x)))) + 64);
  contfrac::HybridRun run;
  VpReal f = contfrac::eval_hybrid(e1_stream(x), n + g, &run, kmax);
  const Context ctx = Context::for_bits(n + 4);
  VpReal r = mul(series::exp(-x, n + 4), f, ctx);
  if (info) {
    info->method = "contfrac";
    info->terms = run.estimate.k;
    info->work_bits = run.work_bits;
  }
  return round(r, Context::for_bits(n + 2));
}

namespace {

VpReal e1_by(Method tag, const VpReal& x, int n, RunInfo* info) {
  switch (tag) {
    case Method::series: return e1_series(x, n, {}, info);
    case Method::contfrac: return e1_cf(x, n, info);
    case Method::asymptotic: return e1_asymptotic(x, n, info);
  }
  throw InternalError("unknown E1 method");
}

}  // namespace

std::optional<int> overlap_agreement(const VpReal& x, int n) {
  std::vector<VpReal> values;
  for (Method m : {Method::series, Method::contfrac, Method::asymptotic}) {
    if (!rejection(m, x, n)) values.push_back(e1_by(m, x, n, nullptr));
  }
  if (values.size() < 2) return std::nullopt;
  int worst = 1 << 20;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) worst = std::min(worst, agreement_bits(values[i], values[j]));
  }
  return worst;
}

VpReal e1(const VpReal& x, int n, RunInfo* info) {
  VpReal v = e1_by(choose_method(x, n), x, n, info);
#ifndef NDEBUG
  if (auto a = overlap_agreement(x, n); a && *a < n - 8) {
    throw InternalError("E1 methods disagree in the overlap band: " + std::to_string(*a) + " bits");
  }
#endif
  return v;
}

}  // namespace vp::expint
