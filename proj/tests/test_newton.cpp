#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vp/newton.hpp"
#include "vp/oracle.hpp"
#include "vp/series.hpp"
#include "vp/stats.hpp"

using namespace vp;

TEST_CASE("doubling schedule shape") {
  auto s = newton::DoublingSchedule::make(1000, 48, 4);
  REQUIRE(!s.stage_precisions.empty());
  CHECK(s.stage_precisions.back() == 1000);
  int prev = s.seed_precision;
  for (int p : s.stage_precisions) {
    CHECK(p <= 2 * prev + 4);
    CHECK(p > prev / 2);
    prev = p;
  }
  CHECK(std::is_sorted(s.stage_precisions.begin(), s.stage_precisions.end()));
}

TEST_CASE("inverse roots with exact answers") {
  CHECK(newton::inv_root(from_int(4), 1, 100) == from_double(0.25));
  CHECK(newton::inv_root(from_int(4), 2, 100) == from_double(0.5));
  CHECK(newton::inv_root(from_int(8), 3, 100) == from_double(0.5));
  CHECK_THROWS_AS(newton::inv_root(from_int(-1), 2, 64), DomainError);
  CHECK_THROWS_AS(newton::inv_root(VpReal(), 2, 64), DomainError);
}

TEST_CASE("inverse root residuals") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    VpReal y = vp_test::random_real(rng, 4, -3, 3, false);
    std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 5);
    int n = 64 + static_cast<int>(rng() % 400);
    VpReal x = newton::inv_root(y, m, n);
    Context w = Context::for_bits(n + 64);
    VpReal r = sub(mul(pow_uint(x, static_cast<std::uint64_t>(m), w), y, w), from_int(1), w);
    REQUIRE(log2_abs(r) <= -n + 3);
  }
}

TEST_CASE("inv_root performs no general divisions") {
  CounterScope scope;
  newton::inv_root(from_double(3.7), 2, 2000);
  CHECK(scope.delta().div == 0);
  CHECK(scope.delta().div_small > 0);
}

TEST_CASE("final stage dominates the cost") {
  std::mt19937_64 rng(3);
  for (std::int64_t m : {1, 2, 3}) {
    newton::NewtonTrace trace;
    newton::inv_root(vp_test::random_real(rng, 260, 1, 1, false), m, 8000, &trace);
    REQUIRE(trace.stages.size() >= 3);
    const int top = trace.stages.back().precision_bits;
    std::uint64_t final_ops = 0;
    for (const auto& st : trace.stages) {
      if (st.precision_bits == top) final_ops += st.digit_ops;
    }
    CHECK(3 * final_ops >= trace.total_digit_ops);
  }
}

TEST_CASE("sqrt") {
  CHECK(newton::sqrt(VpReal(), 64).is_zero());
  CHECK_THROWS_AS(newton::sqrt(from_int(-2), 64), DomainError);
  VpReal r = newton::sqrt(from_int(2), 256);
  Context w = Context::for_bits(400);
  CHECK(agreement_bits(square(r, w), from_int(2)) >= 253);
  VpReal tiny = parse("1e-20", Context::for_bits(200));
  VpReal s = newton::sqrt(tiny, 200);
  CHECK(agreement_bits(square(s, w), tiny) >= 196);
  CHECK(newton::sqrt(from_int(9), 100) == from_int(3));
}

TEST_CASE("ln identities") {
  CHECK(newton::ln(from_int(1), 128).is_zero());
  CHECK_THROWS_AS(newton::ln(from_int(0), 64), DomainError);
  for (int n : {64, 256, 1000}) {
    VpReal e = series::exp(from_int(1), n + 16);
    VpReal l = newton::ln(e, n);
    CHECK(absolute_agreement_bits(l, from_int(1)) >= n - 4);
  }
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const int n = 192;
    VpReal a = vp_test::random_in(rng, 0.5, 4.0);
    VpReal b = vp_test::random_in(rng, 0.5, 4.0);
    Context w = Context::for_bits(n + 64);
    VpReal lhs = newton::ln(mul(a, b, w), n);
    VpReal rhs = add(newton::ln(a, n), newton::ln(b, n), w);
    CHECK(absolute_agreement_bits(lhs, rhs) >= n - 5);
  }
}

TEST_CASE("ln near 1 keeps relative precision") {
  Context ctx = Context::for_bits(300);
  VpReal y = add(from_int(1), power_of_two(-100), ctx);
  VpReal l = newton::ln(y, 128);
  // ln(1 + u) = u − u²/2 + …
  VpReal u = power_of_two(-100);
  VpReal ref = sub(u, scale2(square(u, ctx), -1), ctx);
  CHECK(agreement_bits(l, ref) >= 126);
}

TEST_CASE("ln 2 matches its decimal expansion") {
  VpReal ref = parse("0.69314718055994530941723212145817656807550013436025525412068000949339362196969471560586332699641868754200148102057068573368552023575813055703267075163507596193072757082837143519030703862389167347112335", Context::for_bits(640));
  CHECK(agreement_bits(newton::ln2(600), ref) >= 598);
  CHECK(agreement_bits(newton::ln(from_int(2), 600), ref) >= 598);
}

TEST_CASE("quadratic convergence at fixed precision") {
  VpReal y = from_double(2.5);
  VpReal x0 = from_double(0.62);
  auto res = newton::inv_root_fixed_precision(y, 2, x0, 4000, 12);
  int checked = 0;
  for (std::size_t i = 0; i + 1 < res.size(); ++i) {
    if (res[i + 1] < -3900 || !std::isfinite(res[i + 1])) break;
    CHECK(res[i + 1] <= 1.8 * res[i]);
    ++checked;
  }
  CHECK(checked >= 5);
}
