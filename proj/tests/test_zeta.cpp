#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "vp/agm.hpp"
#include "vp/bernoulli.hpp"
#include "vp/zeta.hpp"

using namespace vp;

namespace {

struct Ref {
  const char* s;
  const char* value;
};

const Ref kRefs[] = {
    {"0.5", "-1.460354508809586812889499152515298012467229331012581490542886087825531"},
    {"3", "1.202056903159594285399738161511449990764986292340498881792271555341838"},
    {"-2.5", "0.008516928777850330542358567028344486936275990220074477765888854951914578"},
    {"10.5", "1.000700842641736155219503740597614699845032356219369183113721871834028"},
    {"-7.25", "0.004038356439206073775194994592857006670395279437981227354799367728368297"},
};

}  // namespace

TEST_CASE("ζ(0) = −½ exactly through p = 1") {
  zeta::EmParams e = zeta::choose_params(VpReal(), 128);
  CHECK(e.p == 1);
  CHECK(e.m == 0);
  CHECK(zeta::zeta(VpReal(), 128) == from_double(-0.5));
  CHECK(zeta::zeta(VpReal(), 5000) == from_double(-0.5));
}

TEST_CASE("pole at s = 1") {
  CHECK_THROWS_AS(zeta::zeta(from_int(1), 64), DomainError);
  CHECK_THROWS_AS(zeta::choose_params(from_int(1), 64), DomainError);
}

TEST_CASE("6·ζ(2) = π²") {
  const int n = 256;
  Context ctx = Context::for_bits(n + 32);
  VpReal z2 = zeta::zeta(from_int(2), n);
  VpReal pi = agm::pi(n + 32);
  VpReal d = sub(mul_small(z2, 6, ctx), square(pi, ctx), ctx);
  CHECK(log2_abs(d) <= -250);
}

TEST_CASE("ζ(3) does not depend on p") {
  for (int n : {64, 200}) {
    VpReal s = from_int(3);
    zeta::EmParams a = zeta::choose_params(s, n);
    zeta::EmParams b = zeta::choose_params(s, n, 2 * a.p);
    CHECK(b.p == 2 * a.p);
    CHECK(b.m <= a.m);
    VpReal za = zeta::zeta_with_params(s, n, a);
    VpReal zb = zeta::zeta_with_params(s, n, b);
    CHECK(absolute_agreement_bits(za, zb) >= n - 2);
  }
}

TEST_CASE("reference values") {
  const int n = 200;
  Context ctx = Context::for_bits(260);
  for (const Ref& r : kRefs) {
    INFO("s = " << r.s);
    CHECK(absolute_agreement_bits(zeta::zeta(parse(r.s, ctx), n), parse(r.value, ctx)) >= n);
  }
}

TEST_CASE("non-positive integers") {
  Context ctx = Context::for_bits(140);
  zeta::EmParams e = zeta::choose_params(from_int(-2), 128);
  CHECK(e.m >= 1);
  CHECK(e.p == 1);
  CHECK(log2_abs(zeta::zeta(from_int(-2), 128)) <= -128);
  CHECK(agreement_bits(zeta::zeta(from_int(-1), 128), div_small(from_int(-1), 12, ctx)) >= 126);
  CHECK(agreement_bits(zeta::zeta(from_int(-3), 128), div_small(from_int(1), 120, ctx)) >= 126);
}

TEST_CASE("parameter policy") {
  for (double sv : {2.0, 3.0, 0.5, -2.5, 20.0}) {
    VpReal s = from_double(sv);
    std::int64_t prev = 0;
    for (int n = 32; n <= 1024; n += 32) {
      zeta::EmParams e = zeta::choose_params(s, n);
      CHECK(e.p >= prev);
      CHECK(e.err_bound_log2 <= -(n + 2));
      CHECK(sv > -(2 * e.m + 1));
      prev = e.p;
    }
  }
}

TEST_CASE("remainder bound checked by direct evaluation") {
  VpReal s = from_int(2);
  zeta::EmParams e = zeta::choose_params(s, 64);
  VpReal t = zeta::em_term(s, e.p, e.m + 1, 64);
  CHECK(log2_abs(t) < -66);
  CHECK(std::fabs(log2_abs(t) - e.err_bound_log2) < 0.01);
}

TEST_CASE("correction terms have a minimum near k = πp") {
  for (double sv : {2.0, 3.0, 0.5}) {
    const std::int64_t p = 10;
    auto t = zeta::term_magnitudes(from_double(sv), p, 80);
    auto it = std::min_element(t.begin(), t.end());
    int kmin = static_cast<int>(it - t.begin()) + 1;
    CHECK(kmin > 1);
    CHECK(kmin < 80);
    CHECK(std::abs(kmin - (M_PI * p - sv / 2)) <= 3);
  }
}

TEST_CASE("Euler's identity for even arguments") {
  const int n = 128;
  Context ctx = Context::for_bits(n + 16);
  VpReal two_pi = scale2(agm::pi(n + 16), 1);
  auto c = bernoulli::stable(3, n + 16);
  for (int k = 1; k <= 3; ++k) {
    VpReal z = zeta::zeta(from_int(2 * k), n);
    VpReal denom = mul(c.c(k), pow_uint(two_pi, 2 * k, ctx), ctx);
    VpReal r = div(z, denom, ctx);
    VpReal expect = from_double(k % 2 == 1 ? 0.5 : -0.5);
    CHECK(absolute_agreement_bits(r, expect) >= n - 8);
  }
}
