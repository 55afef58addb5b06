#include <cmath>
#include <random>

#include "doctest.h"
#include "vp/contfrac.hpp"
#include "vp/newton.hpp"
#include "vp/oracle.hpp"
#include "vp/stats.hpp"

using namespace vp;
using oracle::BigRational;

namespace {

// exp(x)·E1(x) = 1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + …))))).
contfrac::CfStream euler_cf(const VpReal& x) {
  return {"euler", [x](std::int64_t j) {
            if (j == 1) return contfrac::CfTerm{from_int(1), x};
            return contfrac::CfTerm{from_int(j / 2), j % 2 == 0 ? from_int(1) : x};
          }};
}

VpReal dyadic(std::mt19937_64& rng) {
  std::int64_t num = static_cast<std::int64_t>(rng() % 2000) + 1;
  return scale2(from_int(num), -static_cast<std::int64_t>(rng() % 12));
}

struct RandomStream {
  std::vector<contfrac::CfTerm> vp_terms;
  std::vector<oracle::CfTerm> exact;
};

RandomStream random_stream(std::mt19937_64& rng, int k) {
  RandomStream s;
  for (int j = 0; j < k; ++j) {
    VpReal a = dyadic(rng), b = dyadic(rng);
    s.vp_terms.push_back({a, b});
    s.exact.push_back({oracle::to_rational(a), oracle::to_rational(b)});
  }
  return s;
}

}  // namespace

TEST_CASE("backward evaluation of short fractions") {
  Context ctx = Context::for_bits(128);
  auto one = contfrac::from_terms("one", {{from_int(3), from_int(4)}});
  CHECK(contfrac::eval_backward(one, 1, ctx) == from_double(0.75));
  VpReal v = contfrac::eval_backward(contfrac::all_ones(), 10, ctx);
  CHECK(oracle::rel_error_log2(v, BigRational(55, 89)) <= -ctx.precision_bits());
  CHECK_THROWS_AS(contfrac::eval_backward(one, 0, ctx), DomainError);
}

TEST_CASE("random dyadic streams match the exact value within 2 ulps") {
  std::mt19937_64 rng(8);
  Context ctx = Context::for_bits(160);
  for (int rep = 0; rep < 40; ++rep) {
    RandomStream s = random_stream(rng, 8);
    auto cf = contfrac::from_terms("random", s.vp_terms);
    BigRational exact = oracle::exact_cf(s.exact, oracle::CfDirection::backward);
    CHECK(oracle::rel_error_log2(contfrac::eval_backward(cf, 8, ctx), exact) <= -ctx.precision_bits() + 1);
    CHECK(oracle::rel_error_log2(contfrac::eval_forward(cf, 8, ctx), exact) <= -ctx.precision_bits() + 3);
  }
}

TEST_CASE("exact forward and backward agree for every truncation") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    RandomStream s = random_stream(rng, 30);
    for (int k = 1; k <= 30; ++k) {
      std::vector<oracle::CfTerm> prefix(s.exact.begin(), s.exact.begin() + k);
      CHECK(oracle::exact_cf(prefix, oracle::CfDirection::forward) ==
            oracle::exact_cf(prefix, oracle::CfDirection::backward));
    }
  }
}

TEST_CASE("difference recurrence equals the convergent differences exactly") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 5; ++rep) {
    RandomStream s = random_stream(rng, 30);
    oracle::Convergents c = oracle::forward_convergents(s.exact);
    // c.p[j], c.q[j] hold P_j, Q_j for j = 0..30.
    BigRational d = s.exact[0].a / s.exact[0].b;
    CHECK(d == BigRational(c.p[1] / c.q[1]) - BigRational(c.p[0] / c.q[0]));
    for (int j = 2; j <= 30; ++j) {
      d = -s.exact[j - 1].a * c.q[j - 2] * d / c.q[j];
      BigRational direct = BigRational(c.p[j] / c.q[j]) - BigRational(c.p[j - 1] / c.q[j - 1]);
      CHECK(d == direct);
    }
  }
}

TEST_CASE("term count estimate") {
  auto single = contfrac::from_terms("single", {{from_int(1), from_int(2)}});
  CHECK(contfrac::estimate_k(single, 64).k == 1);

  // All-ones: D_k = ±1/(F_k F_{k+1}); the first k below 2^(−n−2) from exact
  // Fibonacci numbers.
  for (int n : {20, 100, 400}) {
    oracle::BigInt f0 = 1, f1 = 1;
    int k = 1;
    while (oracle::log2_abs(BigRational(1) / BigRational(f0 * f1)) >= -n - 2) {
      oracle::BigInt next = f0 + f1;
      f0 = f1;
      f1 = next;
      ++k;
    }
    contfrac::CfEstimate e = contfrac::estimate_k(contfrac::all_ones(), n);
    CHECK(std::abs(e.k - k) <= 1);
    CHECK(e.d_log2 < -n - 2);
  }
  auto lo = contfrac::estimate_k(contfrac::all_ones(), 100);
  auto hi = contfrac::estimate_k(contfrac::all_ones(), 1000);
  double slope = (hi.d_log2 - lo.d_log2) / static_cast<double>(hi.k - lo.k);
  CHECK(std::fabs(slope + 2 * std::log2((1 + std::sqrt(5.0)) / 2)) < 0.01);
}

TEST_CASE("estimate failure carries the best difference seen") {
  try {
    contfrac::estimate_k(contfrac::all_ones(), 200, 10);
    FAIL("expected no convergence");
  } catch (const NoConvergence& e) {
    CHECK(e.best_log2() < -10);
    CHECK(e.best_log2() > -30);
  }
}

TEST_CASE("estimated k is enough for the Euler fraction") {
  VpReal x = from_int(30);
  auto cf = euler_cf(x);
  contfrac::CfEstimate e = contfrac::estimate_k(cf, 64);
  Context ctx = Context::for_bits(96);
  VpReal a = contfrac::eval_backward(cf, e.k, ctx);
  VpReal b = contfrac::eval_backward(cf, e.k + 8, ctx);
  CHECK(absolute_agreement_bits(a, b) >= 64);
}

TEST_CASE("hybrid evaluation of the golden ratio fraction") {
  const int n = 128;
  VpReal r5 = newton::sqrt(from_int(5), n + 16);
  VpReal ref = scale2(sub(r5, from_int(1), Context::for_bits(n + 16)), -1);
  contfrac::HybridRun run;
  VpReal v = contfrac::eval_hybrid(contfrac::all_ones(), n, &run);
  CHECK(absolute_agreement_bits(v, ref) >= n - 2);
  CHECK(run.work_bits > n);
  VpReal more = contfrac::eval_backward(contfrac::all_ones(), run.estimate.k + 8, Context::for_bits(n + 16));
  CHECK(absolute_agreement_bits(v, more) >= n);
}

TEST_CASE("backward evaluation costs half the forward evaluation") {
  auto cf = euler_cf(from_double(7.5));
  Context ctx = Context::for_bits(256);
  auto ops = [](const OpCounters& c) { return c.add + c.mul + c.mul_small; };
  std::uint64_t fwd = 0, bwd = 0;
  {
    CounterScope s;
    contfrac::eval_forward(cf, 200, ctx);
    fwd = ops(s.delta());
  }
  {
    CounterScope s;
    contfrac::eval_backward(cf, 200, ctx);
    bwd = ops(s.delta());
  }
  double ratio = static_cast<double>(bwd) / static_cast<double>(fwd);
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.55);
}

TEST_CASE("vanishing R_0 is a degenerate fraction") {
  auto cf = contfrac::from_terms("degenerate", {{from_int(1), from_int(1)}, {from_int(1), from_int(-1)}});
  CHECK_THROWS_AS(contfrac::eval_backward(cf, 2, Context(4)), DegenerateFraction);
}
