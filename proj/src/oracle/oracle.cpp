#include "vp/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vp::oracle {

namespace {

BigInt pow2(long k) {
  BigInt r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

double log2_int(const BigInt& v) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

}  // namespace

BigRational to_rational(const VpReal& x) {
  if (x.is_zero()) return 0;
  BigInt m = 0;
  for (Limb d : x.digits()) {
    m <<= 32;
    m += static_cast<unsigned long>(d);
  }
  const long shift = 32L * static_cast<long>(x.exponent() - x.size());
  BigRational q;
  if (shift >= 0) {
    q = BigRational(m * pow2(shift));
  } else {
    q = BigRational(m, pow2(-shift));
    q.canonicalize();
  }
  return x.sign() < 0 ? BigRational(-q) : q;
}

BigRational round_to_digits(const BigRational& q, int t) {
  if (q == 0) return 0;
  BigRational a = abs(q);
  // Find e with β^(e−1) ≤ a < β^e.
  double l2 = log2_abs(a);
  long e = static_cast<long>(std::floor(l2 / 32.0)) + 1;
  auto beta_pow = [](long k) {
    return k >= 0 ? BigRational(pow2(32 * k)) : BigRational(BigInt(1), pow2(-32 * k));
  };
  while (a >= beta_pow(e)) ++e;
  while (a < beta_pow(e - 1)) --e;
  // a / β^(e−t) scaled to an integer with round half up.
  BigRational scaled = a / beta_pow(e - t);
  BigInt twice = (scaled.get_num() * 2) / scaled.get_den();
  BigInt r = (twice + 1) / 2;
  BigRational out = BigRational(r) * beta_pow(e - t);
  out.canonicalize();
  return q < 0 ? BigRational(-out) : out;
}

double log2_abs(const BigRational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  return log2_int(q.get_num()) - log2_int(q.get_den());
}

double rel_error_log2(const VpReal& approx, const BigRational& exact) {
  BigRational d = to_rational(approx) - exact;
  if (d == 0) return -std::numeric_limits<double>::infinity();
  if (exact == 0) return std::numeric_limits<double>::infinity();
  return log2_abs(d) - log2_abs(exact);
}

double abs_error_log2(const VpReal& approx, const BigRational& exact) {
  return log2_abs(BigRational(to_rational(approx) - exact));
}

BigInt factorial(int k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

BigRational exact_exp_partial(const BigRational& x, int k) {
  BigRational sum = 0;
  BigRational term = 1;
  for (int j = 0; j < k; ++j) {
    if (j > 0) {
      term *= x;
      term /= j;
    }
    sum += term;
  }
  return sum;
}

BigRational exact_cf(const std::vector<CfTerm>& terms, CfDirection direction) {
  if (terms.empty()) return 0;
  const std::size_t k = terms.size();
  if (direction == CfDirection::forward) {
    Convergents c = forward_convergents(terms);
    if (c.q[k] == 0) throw DegenerateFraction("zero denominator Q_" + std::to_string(k));
    return c.p[k] / c.q[k];
  }
  // Tail value v_j = a_j/(b_j + v_{j+1}), v_{k+1} = 0.
  BigRational v = 0;
  for (std::size_t j = k; j-- > 0;) {
    BigRational den = terms[j].b + v;
    if (den == 0) throw DegenerateFraction("zero denominator at index " + std::to_string(j + 1));
    v = terms[j].a / den;
  }
  return v;
}

Convergents forward_convergents(const std::vector<CfTerm>& terms) {
  Convergents c;
  BigRational p_prev = 1, q_prev = 0;  // index −1
  BigRational p = 0, q = 1;            // index 0
  c.p.push_back(p);
  c.q.push_back(q);
  for (const CfTerm& t : terms) {
    BigRational pn = t.b * p + t.a * p_prev;
    BigRational qn = t.b * q + t.a * q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    c.p.push_back(p);
    c.q.push_back(q);
  }
  return c;
}

BernoulliExact exact_bernoulli(int kmax) {
  BernoulliExact out;
  // C_k = (k − ½)/(2k+1)! − Σ_{i=1}^{k−1} C_{k−i}/(2i+1)!
  std::vector<BigRational> inv_fact_odd(static_cast<std::size_t>(kmax) + 1);
  for (int i = 0; i <= kmax; ++i) inv_fact_odd[i] = BigRational(1, factorial(2 * i + 1));
  for (int k = 1; k <= kmax; ++k) {
    BigRational ck = BigRational(2 * k - 1, 2) * inv_fact_odd[k];
    for (int i = 1; i < k; ++i) ck -= out.c[k - i - 1] * inv_fact_odd[i];
    ck.canonicalize();
    out.c.push_back(ck);
    BigRational b = ck * BigRational(factorial(2 * k));
    b.canonicalize();
    out.b2k.push_back(b);
  }
  return out;
}

}  // namespace vp::oracle
