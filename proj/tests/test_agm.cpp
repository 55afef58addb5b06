#include <cmath>

#include "doctest.h"
#include "vp/agm.hpp"
#include "vp/newton.hpp"
#include "vp/oracle.hpp"

using namespace vp;

namespace {

const char* kPi =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651328230664709384460955058223172535940812848111745028410270193852110555964462294895493038196";

}  // namespace

TEST_CASE("agm basics") {
  agm::AgmTrace tr;
  CHECK(agm::agm(from_int(1), from_int(1), 128, &tr) == from_int(1));
  CHECK(tr.iterations == 1);
  VpReal a = from_double(0.3), b = from_double(7.25);
  CHECK(agm::agm(a, b, 200) == agm::agm(b, a, 200));
  CHECK_THROWS_AS(agm::agm(from_int(0), from_int(1), 64), DomainError);
  CHECK_THROWS_AS(agm::agm(from_int(1), from_int(-1), 64), DomainError);
}

TEST_CASE("agm epsilons shrink quadratically") {
  const int n = 4000;
  agm::AgmTrace tr;
  agm::agm(from_int(1), from_double(0.9), n, &tr);
  int checked = 0;
  for (std::size_t j = 0; j + 1 < tr.eps_log2.size(); ++j) {
    double e = tr.eps_log2[j];
    if (!std::isfinite(tr.eps_log2[j + 1])) break;
    CHECK(tr.eps_log2[j + 1] < e);
    if (e < -1) CHECK(tr.eps_log2[j + 1] <= 2 * e - 2 + 1e-9);
    if (e < std::log2(1e-2) && e > -n / 4.0) {
      double ratio_log2 = tr.eps_log2[j + 1] - (2 * e - 3);
      CHECK(ratio_log2 >= std::log2(0.8));
      CHECK(ratio_log2 <= std::log2(1.25));
      ++checked;
    }
  }
  CHECK(checked >= 3);
}

TEST_CASE("complete elliptic integral") {
  const int n = 200;
  VpReal half_pi = scale2(agm::pi(n + 8), -1);
  CHECK(agreement_bits(agm::elliptic_k(from_int(1), n), half_pi) >= n - 2);
  VpReal b0 = power_of_two(-20);
  double k = to_double(agm::elliptic_k(b0, 64));
  double approx = std::log(4.0 * std::ldexp(1.0, 20));
  CHECK(std::fabs(k - approx) / approx < 1e-4);
  double prev = 1e300;
  for (double b : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0}) {
    double v = to_double(agm::elliptic_k(from_double(b), 64));
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(agm::elliptic_k(from_int(2), 64), DomainError);
  CHECK_THROWS_AS(agm::elliptic_k(VpReal(), 64), DomainError);
}

TEST_CASE("elliptic integral against low-precision quadrature") {
  // K = ∫_0^{π/2} dθ / sqrt(1 − sin²φ sin²θ) by composite Simpson; b0 = cos φ.
  for (double b0 : {0.3, 0.7}) {
    double m = 1 - b0 * b0;
    const int N = 2000;
    double h = (M_PI / 2) / N, s = 0;
    for (int i = 0; i <= N; ++i) {
      double th = i * h;
      double f = 1 / std::sqrt(1 - m * std::sin(th) * std::sin(th));
      s += (i == 0 || i == N) ? f : (i % 2 ? 4 * f : 2 * f);
    }
    double quad = s * h / 3;
    double k = to_double(agm::elliptic_k(from_double(b0), 64));
    CHECK(std::fabs(k - quad) / quad < 1e-10);
  }
}

TEST_CASE("pi digits and refinement") {
  VpReal ref = parse(kPi, Context::for_bits(700));
  for (int n : {64, 256, 640}) {
    CHECK(agreement_bits(agm::compute_pi(n), ref) >= n);
  }
  VpReal a = agm::compute_pi(300);
  VpReal b = agm::compute_pi(364);
  CHECK(agreement_bits(a, b) >= 299);
}

TEST_CASE("five iterations give an error below 1e-42") {
  const int n = 400;
  VpReal p5 = agm::pi_after_iterations(5, n);
  VpReal ref = agm::compute_pi(2 * n);
  double err = log2_abs(sub(p5, ref, Context(4)));
  CHECK(err < -42 * std::log2(10.0));
  VpReal p4 = agm::pi_after_iterations(4, n);
  CHECK(log2_abs(sub(p4, ref, Context(4))) > -42 * std::log2(10.0));
}

TEST_CASE("pi iteration count, fixed precision and t range") {
  for (int n : {16, 100, 1000, 10000}) {
    agm::PiTrace tr;
    agm::compute_pi(n, &tr);
    CHECK(tr.iterations <= static_cast<int>(std::ceil(std::log2(n))) + 3);
    CHECK(std::abs(tr.iterations - tr.predicted_iterations) <= 1);
    CHECK(tr.fixed_precision);
    CHECK(tr.work_bits == agm::pi_work_bits(n));
    VpReal quarter = from_double(0.25);
    for (const VpReal& t : tr.t_values) {
      CHECK(t.sign() > 0);
      CHECK(t <= quarter);
    }
  }
  for (int n = 16; n <= 1000000; n *= 2) {
    CHECK(agm::predicted_pi_iterations(n) <= static_cast<int>(std::ceil(std::log2(n))) + 3);
  }
}
