#include "vp/agm.hpp"

#include <cmath>

#include "vp/cache.hpp"
#include "vp/newton.hpp"

namespace vp::agm {

namespace {

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

}  // namespace

VpReal agm(const VpReal& a0, const VpReal& b0, int n, AgmTrace* trace) {
  if (a0.sign() <= 0 || b0.sign() <= 0) throw DomainError("agm needs positive arguments");
  if (n < 1) n = 1;
  const int nw = n + ceil_log2(n) + 6;
  const Context ctx = Context::for_bits(nw);
  const bool swap = compare(a0, b0) < 0;
  VpReal a = round(swap ? b0 : a0, ctx);
  VpReal b = round(swap ? a0 : b0, ctx);
  const Context low(4);
  int iterations = 0;
  VpReal gap = sub(a, b, ctx);
  std::vector<VpReal> eps;
  std::vector<double> eps_log2;
  const int cap = 4 * ceil_log2(nw) + 64;
  for (;;) {
    if (++iterations > cap) throw InternalError("agm exceeded its iteration cap");
    VpReal e = div(gap, a, low);
    eps_log2.push_back(log2_abs(e));
    eps.push_back(std::move(e));
    VpReal an = div_small(add(a, b, ctx), 2, ctx);
    VpReal bn = newton::sqrt(mul(a, b, ctx), nw);
    a = std::move(an);
    b = std::move(bn);
    VpReal next_gap = sub(a, b, ctx).abs();
    const bool small = next_gap.is_zero() || log2_abs(next_gap) <= log2_abs(a) - nw + 2;
    const bool stalled = compare(next_gap, gap) >= 0;
    gap = std::move(next_gap);
    if (small || stalled) break;
  }
  if (trace) {
    trace->iterations = iterations;
    trace->work_bits = nw;
    trace->eps = std::move(eps);
    trace->eps_log2 = std::move(eps_log2);
    trace->final_gap = gap;
  }
  return round(a, Context::for_bits(n));
}

VpReal elliptic_k(const VpReal& b0, int n, AgmTrace* trace) {
  if (b0.sign() <= 0 || compare(b0, from_int(1)) > 0) throw DomainError("elliptic_k needs 0 < b0 ≤ 1");
  const Context ctx = Context::for_bits(n + 6);
  VpReal m = agm(from_int(1), b0, n + 6, trace);
  VpReal k = div(pi(n + 8), mul_small(m, 2, ctx), ctx);
  return round(k, Context::for_bits(n));
}

int pi_work_bits(int n) { return n + ceil_log2(std::max(n, 1)) + 6; }

int predicted_pi_iterations(int n) {
  const int nw = pi_work_bits(n);
  return static_cast<int>(std::ceil(std::log2((nw + 5) * 0.69314718055994531 / 3.14159265358979324)));
}

namespace {

// The boxed loop. Runs until the gap a−b seen at the top of an iteration is
// below the threshold, finishing that iteration, or for exactly `fixed`
// iterations when fixed > 0.
VpReal pi_loop(int nw, int fixed, PiTrace* trace) {
  const Context ctx = Context::for_bits(nw);
  VpReal a = from_int(1);
  VpReal b = newton::inv_root(from_int(2), 2, nw);
  VpReal t = VpReal::from_parts(1, 0, {0x40000000u});
  const VpReal quarter = t;
  std::int64_t j = 1;
  const std::int64_t threshold = -((nw + 4 + 1) / 2);
  int iterations = 0;
  for (;;) {
    VpReal gap = sub(a, b, ctx);
    const double gap_log2 = log2_abs(gap);
    if (trace) trace->gap_log2.push_back(gap_log2);
    const bool last = fixed > 0 ? iterations + 1 == fixed : (gap.is_zero() || gap_log2 < threshold);
    VpReal y = a;
    a = div_small(add(a, b, ctx), 2, ctx);
    b = newton::sqrt(mul(b, y, ctx), nw);
    VpReal d = sub(a, y, ctx);
    t = sub(t, mul_small(square(d, ctx), j, ctx), ctx);
    j *= 2;
    ++iterations;
    if (t.sign() <= 0 || compare(t, quarter) > 0) throw InternalError("pi loop left 0 < t ≤ 1/4");
    if (trace) trace->t_values.push_back(t);
    if (last) break;
    if (iterations > 200) throw InternalError("pi loop failed to terminate");
  }
  if (trace) {
    trace->iterations = iterations;
    trace->work_bits = nw;
  }
  return div(square(a, ctx), t, ctx);
}

}  // namespace

VpReal compute_pi(int n, PiTrace* trace) {
  if (n < 1) n = 1;
  const int nw = pi_work_bits(n);
  PiTrace local;
  PiTrace* tr = trace ? trace : &local;
  VpReal r = pi_loop(nw, 0, tr);
  tr->predicted_iterations = predicted_pi_iterations(n);
  if (std::abs(tr->iterations - tr->predicted_iterations) > 1) {
    throw InternalError("pi iteration count " + std::to_string(tr->iterations) +
                        " disagrees with prediction " + std::to_string(tr->predicted_iterations));
  }
  return round(r, Context::for_bits(n));
}

VpReal pi_after_iterations(int k, int n) {
  if (k < 1) throw DomainError("iteration count must be positive");
  return round(pi_loop(pi_work_bits(n), k, nullptr), Context::for_bits(n));
}

VpReal pi(int n) {
  return ConstantCache::global().constant("pi", n, [](int bits) { return compute_pi(bits); });
}

}  // namespace vp::agm
