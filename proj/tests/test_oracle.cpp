#include <cmath>
#include <random>

#include "doctest.h"
#include "vp/oracle.hpp"

using namespace vp;
using namespace vp::oracle;

TEST_CASE("exact exp partial sums") {
  CHECK(exact_exp_partial(0, 5) == 1);
  CHECK(exact_exp_partial(1, 3) == BigRational(5, 2));
  // exp(½) = 1.6487212707001281468486507878141635716537761007101...
  BigRational s = exact_exp_partial(BigRational(1, 2), 10);
  BigRational ref("16487212707001281468486507878141635716537761007101/10000000000000000000000000000000000000000000000000");
  BigRational tail_bound = BigRational(272, 100) / BigRational(factorial(10));
  CHECK(abs(BigRational(ref - s)) < tail_bound);
  CHECK(s < ref);
}

TEST_CASE("exact continued fractions") {
  CHECK(exact_cf({{1, 2}}, CfDirection::forward) == BigRational(1, 2));
  CHECK(exact_cf({{1, 2}}, CfDirection::backward) == BigRational(1, 2));
  std::vector<CfTerm> ones(10, CfTerm{1, 1});
  CHECK(exact_cf(ones, CfDirection::forward) == BigRational(55, 89));
  CHECK(exact_cf(ones, CfDirection::backward) == BigRational(55, 89));
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<CfTerm> terms;
    for (int j = 0; j < 8; ++j) {
      BigRational a(static_cast<long>(rng() % 19) + 1, static_cast<long>(rng() % 7) + 1);
      BigRational b(static_cast<long>(rng() % 23) + 1, static_cast<long>(rng() % 5) + 1);
      a.canonicalize();
      b.canonicalize();
      terms.push_back({a, b});
    }
    CHECK(exact_cf(terms, CfDirection::forward) == exact_cf(terms, CfDirection::backward));
  }
}

TEST_CASE("zero denominator is reported with its index") {
  std::vector<CfTerm> terms{{1, 1}, {1, -1}};
  try {
    exact_cf(terms, CfDirection::backward);
    FAIL("expected a degenerate fraction");
  } catch (const DegenerateFraction& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("exact Bernoulli numbers") {
  BernoulliExact b = exact_bernoulli(10);
  CHECK(b.c[0] == BigRational(1, 12));
  CHECK(b.b2k[0] == BigRational(1, 6));
  CHECK(b.b2k[1] == BigRational(-1, 30));
  CHECK(b.b2k[2] == BigRational(1, 42));
  CHECK(b.b2k[9] == BigRational(-174611, 330));
}

TEST_CASE("generating function residual is below the truncation bound") {
  // x/(e^x − 1) + x/2 = 1 + Σ C_k x^{2k}; at x = 1/2 compare with the
  // truncated exp series on a common denominator.
  const int kmax = 12;
  BernoulliExact b = exact_bernoulli(kmax);
  BigRational x(1, 2);
  BigRational ex = exact_exp_partial(x, 60);
  BigRational lhs = x / (ex - 1) + x / 2;
  BigRational rhs = 1;
  BigRational xp = 1;
  for (int k = 1; k <= kmax; ++k) {
    xp *= x * x;
    rhs += b.c[k - 1] * xp;
  }
  // |C_k| < 2·(2π)^(−2k), so the tail is below 3·(x/2π)^(2kmax+2).
  double bound_log2 = std::log2(3.0) + (2 * kmax + 2) * std::log2(0.5 / (2 * M_PI));
  CHECK(log2_abs(BigRational(lhs - rhs)) < bound_log2);
}

TEST_CASE("rational views of floating values") {
  CHECK(to_rational(from_double(0.375)) == BigRational(3, 8));
  CHECK(to_rational(from_int(-7)) == -7);
  CHECK(round_to_digits(BigRational(1, 3), 2) ==
        BigRational(BigInt("6148914691236517205"), BigInt("18446744073709551616")));
}
