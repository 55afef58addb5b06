#include <cmath>

#include "doctest.h"
#include "vp/bernoulli.hpp"
#include "vp/oracle.hpp"
#include "vp/stats.hpp"

using namespace vp;
using oracle::BigRational;

namespace {

const oracle::BernoulliExact& exact() {
  static const oracle::BernoulliExact e = oracle::exact_bernoulli(70);
  return e;
}

double rel_err(const VpReal& v, int k) { return oracle::rel_error_log2(v, exact().c[k - 1]); }

const double kLog2TwoPi = std::log2(2 * M_PI);

}  // namespace

TEST_CASE("first scaled Bernoulli number") {
  for (int n : {64, 128}) {
    Context ctx = Context::for_bits(n);
    CHECK(rel_err(bernoulli::stable(1, n).c(1), 1) <= -ctx.precision_bits());
    CHECK(rel_err(bernoulli::unstable(1, n).c(1), 1) <= -ctx.precision_bits());
  }
  CHECK_THROWS_AS(bernoulli::stable(0, 64), DomainError);
}

TEST_CASE("stable recurrence error is O(k²·2^(−n))") {
  for (int n : {64, 128, 256}) {
    auto t = bernoulli::stable(60, n);
    for (int k = 1; k <= 60; ++k) {
      INFO("n=" << n << " k=" << k);
      CHECK(rel_err(t.c(k), k) <= std::log2(64.0 * k * k) - n);
    }
  }
}

TEST_CASE("table sign and magnitude envelope") {
  auto t = bernoulli::stable(60, 128);
  for (int k = 1; k <= 60; ++k) {
    CHECK(t.c(k).sign() == (k % 2 == 1 ? 1 : -1));
    if (k >= 2) {
      double l = log2_abs(t.c(k));
      CHECK(l > -2 * k * kLog2TwoPi);
      CHECK(l < std::log2(2.2) - 2 * k * kLog2TwoPi);
    }
  }
}

TEST_CASE("unstable recurrence loses about two bits per index") {
  auto t = bernoulli::unstable(40, 128);
  double e10 = rel_err(t.c(10), 10);
  double e40 = rel_err(t.c(40), 40);
  CHECK(e40 - e10 >= 45);
  CHECK(e40 - e10 <= 75);
  double slope = (e40 - e10) / 30;
  CHECK(slope >= 1.5);
  CHECK(slope <= 2.5);
  auto g = bernoulli::unstable(40, 256);
  for (int k = 1; k <= 40; ++k) CHECK(rel_err(g.c(k), k) <= -170);
}

TEST_CASE("a perturbation of C_1 grows like the homogeneous solution") {
  // The difference solves the homogeneous recurrence whose generating
  // function x³/sinh x has poles at ±iπ, so it shrinks like π^(−2k) while
  // C_k shrinks like (2π)^(−2k).
  Context ctx = Context::for_bits(600);
  VpReal c1 = div_small(from_int(1), 12, ctx);
  VpReal delta = power_of_two(-128);
  auto a = bernoulli::unstable_from(c1, 40, ctx);
  auto b = bernoulli::unstable_from(add(c1, delta, ctx), 40, ctx);
  std::vector<double> d(41);
  for (int k = 1; k <= 40; ++k) d[k] = log2_abs(sub(b[k - 1], a[k - 1], ctx)) + 128;
  for (int k = 10; k < 40; ++k) CHECK(std::fabs(d[k + 1] - d[k] + 2 * std::log2(M_PI)) < 0.05);
  // Relative to C_k the error grows by 4 per index.
  double rel40 = d[40] - log2_abs(a[39]);
  double rel10 = d[10] - log2_abs(a[9]);
  CHECK(std::fabs((rel40 - rel10) / 30 - 2) < 0.05);
}

TEST_CASE("contour C_1..C_6 within eight times the geometric bound") {
  const int n = 96;
  const int k = bernoulli::contour_points(n);
  CHECK(k % 4 == 0);
  auto t = bernoulli::contour(6, n);
  double bound = 3 - k * kLog2TwoPi;
  for (int j = 1; j <= 6; ++j) CHECK(rel_err(t.c(j), j) <= bound);
  auto s = bernoulli::stable(6, n);
  for (int j = 1; j <= 6; ++j) CHECK(agreement_bits(t.c(j), s.c(j)) >= n - 6);
  CHECK_THROWS_AS(bernoulli::contour(40, 64), DomainError);
}

TEST_CASE("contour error matches the first aliased coefficient") {
  // With k = 16 points, S_{2j,16} − C_j = C_{j+8} + C_{j+16} + …
  const int k = 16;
  auto t = bernoulli::contour_with_points(3, k, 200);
  for (int j = 1; j <= 3; ++j) {
    BigRational diff = oracle::to_rational(t.c(j)) - exact().c[j - 1];
    double ratio = oracle::log2_abs(diff) - oracle::log2_abs(exact().c[j + k / 2 - 1]);
    CHECK(std::fabs(ratio) <= 3);
  }
}

TEST_CASE("generating function is real on the real axis and conjugate-symmetric") {
  const int n = 128;
  Context ctx = Context::for_bits(n);
  VpReal t = from_double(0.3);
  for (int i = 0; i < 6; ++i) {
    VpComplex z{from_double(std::cos(0.37 * i) * 0.9), from_double(std::sin(0.37 * i) * 0.9)};
    VpComplex a = bernoulli::generating_function(z, n);
    VpComplex b = bernoulli::generating_function(conj(z), n);
    CHECK(a.re == b.re);
    CHECK(a.im == -b.im);
  }
  VpComplex r = bernoulli::generating_function(VpComplex{t, VpReal()}, n);
  CHECK(r.im.is_zero());
  (void)ctx;
}

TEST_CASE("contour keeps a constant working set beyond the output") {
  auto peak = [](auto fn) {
    CounterScope s;
    fn();
    return s.peak_delta();
  };
  bernoulli::contour(5, 300);  // warm the π cache
  auto c5 = peak([] { bernoulli::contour(5, 300); });
  auto c20 = peak([] { bernoulli::contour(20, 300); });
  auto s5 = peak([] { bernoulli::stable(5, 300); });
  auto s20 = peak([] { bernoulli::stable(20, 300); });
  CHECK(c20 - c5 <= 15 + 4);
  CHECK(s20 - s5 >= 2 * 15);
}

TEST_CASE("Bernoulli numbers from the scaled values") {
  auto t = bernoulli::stable(10, 128);
  VpReal b20 = bernoulli::b2k_from_scaled(t.c(10), 10, 128);
  CHECK(oracle::rel_error_log2(b20, BigRational(-174611, 330)) <= -120);
  CHECK(bernoulli::parse_method("contour") == bernoulli::Method::contour);
  CHECK(bernoulli::method_name(bernoulli::Method::unstable) == "unstable");
}

TEST_CASE("cached stable table") {
  auto c = bernoulli::stable_cached(20, 128);
  REQUIRE(c.size() >= 20);
  auto s = bernoulli::stable(20, 128);
  for (int k = 1; k <= 20; ++k) CHECK(c[k - 1] == s.c(k));
  auto c2 = bernoulli::stable_cached(30, 128);
  for (int k = 1; k <= 20; ++k) CHECK(c2[k - 1] == c[k - 1]);
}
