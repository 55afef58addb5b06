#pragma once

// Exact rational reference computations for tests. Independent of the
// floating-point core: values are read from a VpReal's digits and nothing else.

#include <gmpxx.h>

#include <vector>

#include "vp/real.hpp"

namespace vp::oracle {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational to_rational(const VpReal& x);
// Nearest value with t base-2^32 digits, ties away from zero.
BigRational round_to_digits(const BigRational& q, int t);

double log2_abs(const BigRational& q);
// log2 |approx − exact| / |exact|, −inf when equal.
double rel_error_log2(const VpReal& approx, const BigRational& exact);
double abs_error_log2(const VpReal& approx, const BigRational& exact);

BigInt factorial(int k);

// Σ_{j<k} x^j/j!.
BigRational exact_exp_partial(const BigRational& x, int k);

struct CfTerm {
  BigRational a;
  BigRational b;
};
enum class CfDirection { forward, backward };

// Value of a1/(b1 + a2/(b2 + …)). Forward uses the P/Q recurrence, backward
// the tail recurrence. Throws DegenerateFraction naming the index where a
// zero denominator appears.
BigRational exact_cf(const std::vector<CfTerm>& terms, CfDirection direction);

// P_j, Q_j for j = 0..k (P_0 = 0, Q_0 = 1, P_{−1} = 1, Q_{−1} = 0).
struct Convergents {
  std::vector<BigRational> p;
  std::vector<BigRational> q;
};
Convergents forward_convergents(const std::vector<CfTerm>& terms);

struct BernoulliExact {
  std::vector<BigRational> c;    // C_k = B_{2k}/(2k)!, index k−1
  std::vector<BigRational> b2k;  // B_{2k}, index k−1
};
BernoulliExact exact_bernoulli(int kmax);

}  // namespace vp::oracle
