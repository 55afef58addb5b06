#include "vp/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace vp::contfrac {

namespace {

constexpr std::int64_t kRescaleLimbs = std::int64_t{1} << 20;

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

// Multiplies by a term, using the single-limb path for small integer terms.
VpReal times(const VpReal& term, const VpReal& r, const Context& ctx) {
  if (term.size() == 1 && is_integer(term) && term.digits()[0] < (Limb{1} << 31) && term.exponent() == 1) {
    return mul_small(r, term.sign() * static_cast<std::int64_t>(term.digits()[0]), ctx);
  }
  return mul(term, r, ctx);
}

VpReal shift_limbs(const VpReal& x, std::int64_t s) {
  if (x.is_zero() || s == 0) return x;
  return VpReal::from_parts(x.sign(), x.exponent() - s, x.digits());
}

// Joint rescale that keeps the pair's ratio and moves the larger exponent to 0.
void rescale(VpReal& u, VpReal& v) {
  std::int64_t e = std::max(u.is_zero() ? std::numeric_limits<std::int64_t>::min() : u.exponent(),
                            v.is_zero() ? std::numeric_limits<std::int64_t>::min() : v.exponent());
  if (e == std::numeric_limits<std::int64_t>::min()) return;
  if (e > kRescaleLimbs || e < -kRescaleLimbs) {
    u = shift_limbs(u, e);
    v = shift_limbs(v, e);
  }
}

}  // namespace

std::int64_t default_kmax(int n) { return 64 + 8 * static_cast<std::int64_t>(std::max(n, 1)); }

CfEstimate estimate_k(const CfStream& cf, int n, std::int64_t kmax) {
  if (kmax <= 0) kmax = default_kmax(n);
  const double stop = -static_cast<double>(n) - 2;
  // Q_{j−2}, Q_{j−1}. The side exponent of Scaled does the rescaling that a
  // plain double would need every few hundred terms.
  Scaled q2 = Scaled::make(0.0), q1 = Scaled::make(1.0);
  Scaled d;
  bool have_d = false;
  Scaled prod_a = Scaled::make(1.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 1; j <= kmax; ++j) {
    CfTerm t = cf.term(j);
    if (t.a.is_zero()) return {std::max<std::int64_t>(1, j - 1), -std::numeric_limits<double>::infinity()};
    const Scaled a = to_scaled(t.a), b = to_scaled(t.b);
    const Scaled q = b * q1 + a * q2;
    prod_a = prod_a * a;
    if (q.is_zero() || q1.is_zero()) {
      have_d = false;
    } else if (j == 1) {
      d = a / b;
      have_d = true;
    } else if (have_d) {
      d = -(a * q2 * d) / q;
    } else {
      // D_j = (−1)^(j−1)·a_1⋯a_j/(Q_j·Q_{j−1}) after a vanishing denominator.
      d = prod_a / (q * q1);
      if (j % 2 == 0) d = -d;
      have_d = true;
    }
    q2 = q1;
    q1 = q;
    if (have_d) {
      const double dl = d.log2_abs();
      best = std::min(best, dl);
      if (dl < stop) return {j, dl};
    }
  }
  throw NoConvergence("continued fraction '" + cf.label + "' did not converge within " +
                          std::to_string(kmax) + " terms",
                      best);
}

VpReal eval_backward(const CfStream& cf, std::int64_t k, const Context& ctx) {
  if (k < 1) throw DomainError("backward evaluation needs k ≥ 1");
  CfTerm next = cf.term(k);
  VpReal r2 = from_int(1);  // R_{j+2}
  VpReal r1 = round(next.b, ctx);  // R_{j+1}
  for (std::int64_t j = k - 2; j >= 0; --j) {
    CfTerm cur = cf.term(j + 1);
    VpReal r = add(times(cur.b, r1, ctx), times(next.a, r2, ctx), ctx);
    r2 = std::move(r1);
    r1 = std::move(r);
    next = std::move(cur);
    rescale(r1, r2);
  }
  // r1 = R_0, r2 = R_1, next = term 1.
  if (r1.is_zero()) throw DegenerateFraction("zero denominator R_0 in backward evaluation of '" + cf.label + "'");
  return div(times(next.a, r2, ctx), r1, ctx);
}

VpReal eval_forward(const CfStream& cf, std::int64_t k, const Context& ctx) {
  if (k < 1) throw DomainError("forward evaluation needs k ≥ 1");
  VpReal p2 = from_int(1), p1;
  VpReal q2, q1 = from_int(1);
  for (std::int64_t j = 1; j <= k; ++j) {
    CfTerm t = cf.term(j);
    VpReal p = add(times(t.b, p1, ctx), times(t.a, p2, ctx), ctx);
    VpReal q = add(times(t.b, q1, ctx), times(t.a, q2, ctx), ctx);
    p2 = std::move(p1);
    p1 = std::move(p);
    q2 = std::move(q1);
    q1 = std::move(q);
    if (!q1.is_zero() && std::abs(q1.exponent()) > kRescaleLimbs) {
      const std::int64_t e = q1.exponent();
      p1 = shift_limbs(p1, e);
      p2 = shift_limbs(p2, e);
      q1 = shift_limbs(q1, e);
      q2 = shift_limbs(q2, e);
    }
  }
  if (q1.is_zero()) throw DegenerateFraction("zero denominator Q_" + std::to_string(k) + " in '" + cf.label + "'");
  return div(p1, q1, ctx);
}

VpReal eval_hybrid(const CfStream& cf, int n, HybridRun* run, std::int64_t kmax) {
  CfEstimate est = estimate_k(cf, n, kmax);
  const int w = n + ceil_log2(est.k) + 4;
  VpReal v = eval_backward(cf, est.k, Context::for_bits(w));
  if (run) {
    run->estimate = est;
    run->work_bits = w;
  }
  return round(v, Context::for_bits(n + 2));
}

CfStream all_ones() {
  return {"all-ones", [](std::int64_t) { return CfTerm{from_int(1), from_int(1)}; }};
}

CfStream from_terms(std::string label, std::vector<CfTerm> terms) {
  auto shared = std::make_shared<const std::vector<CfTerm>>(std::move(terms));
  return {std::move(label), [shared](std::int64_t j) {
            if (j >= 1 && j <= static_cast<std::int64_t>(shared->size())) return (*shared)[j - 1];
            return CfTerm{VpReal(), from_int(1)};
          }};
}

}  // namespace vp::contfrac
