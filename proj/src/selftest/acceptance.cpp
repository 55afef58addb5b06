#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "vp/agm.hpp"
#include "vp/bernoulli.hpp"
#include "vp/bessel.hpp"
#include "vp/contfrac.hpp"
#include "vp/expint.hpp"
#include "vp/newton.hpp"
#include "vp/oracle.hpp"
#include "vp/selftest.hpp"
#include "vp/series.hpp"
#include "vp/stats.hpp"
#include "vp/zeta.hpp"

namespace vp::selftest {

namespace {

using oracle::BigInt;
using oracle::BigRational;

constexpr double kLn2 = 0.69314718055994530942;

// Collects sub-check outcomes; the first failure becomes the detail line.
class Log {
 public:
  void check(bool ok, const std::string& what) {
    ++count_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    if (!ok) ++failures_;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& extra) const {
    std::ostringstream os;
    if (ok()) {
      os << count_ << " checks";
    } else {
      os << failures_ << "/" << count_ << " checks failed, first: " << first_failure_;
    }
    if (!extra.empty()) os << "; " << extra;
    return os.str();
  }

 private:
  int count_ = 0;
  int failures_ = 0;
  std::string first_failure_;
};

std::string fmt(double v, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

const oracle::BernoulliExact& exact_bernoulli() {
  static const oracle::BernoulliExact e = oracle::exact_bernoulli(64);
  return e;
}

// 1. AGM π after five iterations.
std::string agm_pi(Log& log) {
  const int n = 400;
  VpReal p5 = agm::pi_after_iterations(5, n);
  VpReal ref = agm::compute_pi(2 * n);
  double err = log2_abs(sub(p5, ref, Context(4)));
  double bound = -42 * std::log2(10.0);
  log.check(err < bound, "|a²/t − π| = 2^" + fmt(err) + " not below 1e-42");
  return "error 2^" + fmt(err) + " vs 1e-42 = 2^" + fmt(bound);
}

// 2. exp(1) to 1000 digits against the exact partial sum.
std::string exp_thousand_digits(Log& log) {
  const int digits = 1000;
  const int n = static_cast<int>(std::ceil(digits * std::log2(10.0))) + 16;
  VpReal e = series::exp(from_int(1), n);
  BigInt ten_tail;
  mpz_ui_pow_ui(ten_tail.get_mpz_t(), 10, 1002);
  int k = 1;
  // e/k! < 3/k! < 10^(−1002)
  while (BigInt(oracle::factorial(k)) <= 3 * ten_tail) ++k;
  BigRational ref = oracle::exact_exp_partial(1, k);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits - 1);
  auto nearest = [](const BigRational& q) {
    BigRational h = q + BigRational(1, 2);
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return r;
  };
  BigInt want = nearest(ref * scale);
  BigInt got = nearest(oracle::to_rational(e) * scale);
  log.check(abs(BigInt(got - want)) <= 1, "rounded value differs from the partial sum");
  std::string text = to_decimal(e, digits, DecimalStyle::scientific);
  std::string mantissa;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') mantissa.push_back(c);
  }
  log.check(mantissa.size() == static_cast<std::size_t>(digits), "formatted digit count");
  BigInt printed(mantissa.empty() ? "0" : mantissa);
  log.check(abs(BigInt(printed - want)) <= 1, "formatted digits differ from the partial sum");
  return std::to_string(k) + " exact terms, last digits " + mantissa.substr(mantissa.size() > 8 ? mantissa.size() - 8 : 0);
}

// 3. Stable and unstable Bernoulli recurrences.
std::string bernoulli_stability(Log& log) {
  auto t = bernoulli::stable(60, 256);
  double worst = -1e9;
  for (int k = 1; k <= 60; ++k) {
    double err = oracle::rel_error_log2(t.c(k), exact_bernoulli().c[k - 1]);
    double bound = std::log2(64.0 * k * k) - 256;
    worst = std::max(worst, err - bound);
    log.check(err <= bound, "stable C_" + std::to_string(k) + " error 2^" + fmt(err));
  }
  auto u = bernoulli::unstable(40, 128);
  double e10 = oracle::rel_error_log2(u.c(10), exact_bernoulli().c[9]);
  double e40 = oracle::rel_error_log2(u.c(40), exact_bernoulli().c[39]);
  double growth = e40 - e10;
  log.check(growth >= 45 && growth <= 75, "unstable growth " + fmt(growth) + " bits outside [45, 75]");
  return "stable margin " + fmt(-worst) + " bits; unstable growth " + fmt(growth) + " bits";
}

// 4. Contour Bernoulli values.
std::string contour_bernoulli(Log& log) {
  const int n = 96;
  const int k = bernoulli::contour_points(n);
  auto t = bernoulli::contour(6, n);
  double bound = 3 - k * std::log2(2 * M_PI);
  double worst = -1e9;
  for (int j = 1; j <= 6; ++j) {
    double err = oracle::rel_error_log2(t.c(j), exact_bernoulli().c[j - 1]);
    worst = std::max(worst, err);
    log.check(err <= bound, "contour C_" + std::to_string(j) + " error 2^" + fmt(err));
  }
  return std::to_string(k) + " points, worst 2^" + fmt(worst) + " vs 2^" + fmt(bound);
}

// 5. E1 regime overlaps.
std::string e1_regimes(Log& log) {
  using expint::Method;
  int pairs = 0;
  int worst_margin = 1 << 20;
  for (int n : {64, 128}) {
    const double L = n * kLn2;
    const double th = expint::asymptotic_threshold(n);
    std::vector<double> grid{0.0925 * L, 0.1 * L, 0.108 * L, 1.005 * th, 1.04 * th, 1.09 * th};
    for (double xv : grid) {
      VpReal x = from_double(xv);
      std::vector<std::pair<Method, VpReal>> values;
      for (Method m : {Method::series, Method::contfrac, Method::asymptotic}) {
        if (expint::rejection(m, x, n)) continue;
        VpReal v = m == Method::series   ? expint::e1_series(x, n)
                   : m == Method::contfrac ? expint::e1_cf(x, n)
                                           : expint::e1_asymptotic(x, n);
        values.emplace_back(m, v);
      }
      log.check(values.size() >= 2, "x = " + fmt(xv) + " admitted by fewer than two methods");
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          int a = agreement_bits(values[i].second, values[j].second);
          ++pairs;
          worst_margin = std::min(worst_margin, a - (n - 8));
          log.check(a >= n - 8, "n=" + std::to_string(n) + " x=" + fmt(xv) + " " +
                                    expint::method_name(values[i].first) + "/" +
                                    expint::method_name(values[j].first) + " agree to " +
                                    std::to_string(a) + " bits");
        }
      }
    }
  }
  return std::to_string(pairs) + " pairs, smallest margin " + std::to_string(worst_margin) + " bits";
}

// 6. ζ cross-checks.
std::string zeta_checks(Log& log) {
  const int n = 256;
  Context ctx = Context::for_bits(n + 32);
  VpReal d = sub(mul_small(zeta::zeta(from_int(2), n), 6, ctx), square(agm::pi(n + 32), ctx), ctx);
  double dl = log2_abs(d);
  log.check(dl <= -250, "|6ζ(2) − π²| = 2^" + fmt(dl));
  zeta::EmParams z0 = zeta::choose_params(VpReal(), n);
  log.check(z0.p == 1, "ζ(0) does not use p = 1");
  log.check(zeta::zeta(VpReal(), n) == from_double(-0.5), "ζ(0) ≠ −½");
  int worst = 1 << 20;
  for (int bits : {64, 256}) {
    VpReal s = from_int(3);
    zeta::EmParams a = zeta::choose_params(s, bits);
    zeta::EmParams b = zeta::choose_params(s, bits, 2 * a.p);
    int agree = absolute_agreement_bits(zeta::zeta_with_params(s, bits, a), zeta::zeta_with_params(s, bits, b));
    worst = std::min(worst, agree - (bits - 2));
    log.check(b.p == 2 * a.p && agree >= bits - 2, "ζ(3) at p and 2p agree to " + std::to_string(agree) + " bits");
  }
  return "6ζ(2) − π² = 2^" + fmt(dl) + "; ζ(3) p/2p margin " + std::to_string(worst) + " bits";
}

// 7. Euler's constant.
std::string gamma_independence(Log& log) {
  const int n = 128;
  std::int64_t x = series::gamma_parameter(n);
  VpReal a = series::euler_gamma_series(n, x);
  VpReal b = series::euler_gamma_series(n, 2 * x);
  int ab = agreement_bits(a, b);
  log.check(ab >= 124, "X and 2X agree to " + std::to_string(ab) + " bits");
  VpReal c = series::euler_gamma_series(n + 64, series::gamma_parameter(n + 64));
  int ac = agreement_bits(a, c);
  log.check(ac >= n - 2, "n and n+64 agree to " + std::to_string(ac) + " bits");
  return "X=" + std::to_string(x) + ": X/2X " + std::to_string(ab) + " bits, n/n+64 " + std::to_string(ac) + " bits";
}

// 8. Continued fractions.
std::string contfrac_engine(Log& log) {
  std::mt19937_64 rng(8);
  auto rational = [&rng]() {
    BigRational q(static_cast<long>(rng() % 1000) + 1, static_cast<long>(rng() % 97) + 1);
    q.canonicalize();
    return q;
  };
  int streams = 0;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<oracle::CfTerm> terms;
    for (int j = 0; j < 30; ++j) terms.push_back({rational(), rational()});
    oracle::Convergents c = oracle::forward_convergents(terms);
    ++streams;
    for (int k = 1; k <= 30; ++k) {
      std::vector<oracle::CfTerm> prefix(terms.begin(), terms.begin() + k);
      log.check(oracle::exact_cf(prefix, oracle::CfDirection::forward) ==
                    oracle::exact_cf(prefix, oracle::CfDirection::backward),
                "forward ≠ backward at k=" + std::to_string(k));
    }
    BigRational d = terms[0].a / terms[0].b;
    log.check(d == BigRational(c.p[1] / c.q[1]) - BigRational(c.p[0] / c.q[0]), "D_1 identity");
    for (int j = 2; j <= 30; ++j) {
      d = -terms[j - 1].a * c.q[j - 2] * d / c.q[j];
      BigRational direct = BigRational(c.p[j] / c.q[j]) - BigRational(c.p[j - 1] / c.q[j - 1]);
      log.check(d == direct, "D_" + std::to_string(j) + " identity");
    }
  }
  const int n = 128;
  VpReal r5 = newton::sqrt(from_int(5), n + 16);
  VpReal ref = scale2(sub(r5, from_int(1), Context::for_bits(n + 16)), -1);
  contfrac::HybridRun run;
  VpReal v = contfrac::eval_hybrid(contfrac::all_ones(), n, &run);
  int agree = absolute_agreement_bits(v, ref);
  log.check(agree >= n - 2, "golden ratio fraction agrees to " + std::to_string(agree) + " bits");
  return std::to_string(streams) + " streams; golden ratio k=" + std::to_string(run.estimate.k) + ", " +
         std::to_string(agree) + " bits";
}

// 9. Bessel functions.
std::string bessel_checks(Log& log) {
  int worst = 1 << 20;
  for (int n : {64, 128, 256}) {
    for (double xv : {1.0, n / 8.0}) {
      VpReal x = from_double(xv);
      for (int nu = 0; nu <= 8; ++nu) {
        int a = absolute_agreement_bits(bessel::j_series(nu, x, n), bessel::j_backward(nu, x, n));
        worst = std::min(worst, a - (n - 6));
        log.check(a >= n - 6, "n=" + std::to_string(n) + " x=" + fmt(xv) + " ν=" + std::to_string(nu) +
                                  " series/backward " + std::to_string(a) + " bits");
      }
    }
  }
  const int n = 128;
  for (double xv : {1.0, 16.0, 60.0}) {
    VpReal x = from_double(xv);
    for (int nu : {0, 3, 8}) {
      std::int64_t N = bessel::start_index(nu, x, n);
      int a = absolute_agreement_bits(bessel::j_backward_from(nu, x, n, N), bessel::j_backward_from(nu, x, n, N + 8));
      log.check(a >= n - 2, "N vs N+8 at x=" + fmt(xv) + " ν=" + std::to_string(nu) + ": " + std::to_string(a) + " bits");
    }
  }
  return "smallest series/backward margin " + std::to_string(worst) + " bits";
}

// 10. Newton iteration.
std::string newton_checks(Log& log) {
  auto res = newton::inv_root_fixed_precision(from_double(2.5), 2, from_double(0.62), 4000, 12);
  int steps = 0;
  double worst = 1e9;
  for (std::size_t i = 0; i + 1 < res.size(); ++i) {
    if (!std::isfinite(res[i + 1]) || res[i + 1] < -3900) break;
    double ratio = res[i + 1] / res[i];
    worst = std::min(worst, ratio);
    log.check(ratio >= 1.8, "residual exponent ratio " + fmt(ratio) + " at step " + std::to_string(i + 1));
    ++steps;
  }
  log.check(steps >= 5, "fewer than five steps before the floor");
  for (std::int64_t m : {1, 2, 3, 5}) {
    CounterScope scope;
    newton::inv_root(from_double(3.7), m, 2000);
    log.check(scope.delta().div == 0, "inv_root m=" + std::to_string(m) + " used a division");
  }
  return std::to_string(steps) + " steps, smallest ratio " + fmt(worst);
}

// 11. Rounding model.
std::string rounding_model(Log& log) {
  std::mt19937_64 rng(11);
  auto random_real = [&rng](int limbs, int lo, int hi) {
    std::vector<Limb> d(static_cast<std::size_t>(limbs));
    for (auto& v : d) v = static_cast<Limb>(rng());
    if (d[0] == 0) d[0] = 1;
    std::int64_t e = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    return VpReal::from_parts(rng() & 1 ? -1 : 1, e, std::move(d));
  };
  const int ops = 10000;
  double worst = -1e9;
  int failures = 0;
  for (int i = 0; i < ops; ++i) {
    const int t = 2 + static_cast<int>(rng() % 10);
    const Context ctx(t);
    VpReal a = random_real(1 + static_cast<int>(rng() % (t + 2)), -4, 4);
    VpReal b = random_real(1 + static_cast<int>(rng() % (t + 2)), -4, 4);
    const int op = static_cast<int>(rng() % 6);
    // Near-cancellation for a fraction of the additive cases.
    if (op <= 1 && rng() % 4 == 0) b = add(a.abs(), random_real(1, a.exponent() - t, a.exponent() - 1), Context(t + 4));
    const std::int64_t m = static_cast<std::int64_t>(rng() % 100000) + 1;
    BigRational qa = oracle::to_rational(a), qb = oracle::to_rational(b);
    VpReal got;
    BigRational want;
    switch (op) {
      case 0: got = add(a, b, ctx); want = qa + qb; break;
      case 1: got = sub(a, b, ctx); want = qa - qb; break;
      case 2: got = mul(a, b, ctx); want = qa * qb; break;
      case 3: got = mul_small(a, m, ctx); want = qa * m; break;
      case 4: got = div_small(a, m, ctx); want = qa / m; break;
      default: got = square(a, ctx); want = qa * qa; break;
    }
    double err = want == 0 ? (got.is_zero() ? -INFINITY : INFINITY) : oracle::rel_error_log2(got, want);
    worst = std::max(worst, err + ctx.precision_bits());
    if (err > ctx.machine_eps_log2()) ++failures;
  }
  log.check(failures == 0, std::to_string(failures) + " correctly rounded ops above ½β^(1−t)");
  // Division carries its own 3β^(1−t) bound.
  int div_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int t = 2 + static_cast<int>(rng() % 10);
    const Context ctx(t);
    VpReal a = random_real(1 + static_cast<int>(rng() % t), -4, 4);
    VpReal b = random_real(1 + static_cast<int>(rng() % t), -4, 4);
    double err = oracle::rel_error_log2(div(a, b, ctx), oracle::to_rational(a) / oracle::to_rational(b));
    if (err > std::log2(3.0) - ctx.precision_bits()) ++div_failures;
  }
  log.check(div_failures == 0, std::to_string(div_failures) + " divisions above 3β^(1−t)");
  return std::to_string(ops) + " ops, worst error 2^(-p" + fmt(worst) + ") with bound 2^(-p-1)" +
         "; 1000 divisions within 3β^(1−t)";
}

struct Criterion {
  const char* name;
  double limit;
  std::function<std::string(Log&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"AGM pi after five iterations below 1e-42", 1, agm_pi},
      {"exp(1) to 1000 digits against the exact partial sum", 10, exp_thousand_digits},
      {"Bernoulli stable and unstable recurrences", 30, bernoulli_stability},
      {"contour Bernoulli C1..C6 within 8(2pi)^-k", 30, contour_bernoulli},
      {"E1 regime overlaps agree to n-8 bits", 30, e1_regimes},
      {"zeta cross-checks", 30, zeta_checks},
      {"Euler gamma parameter independence", 60, gamma_independence},
      {"continued fraction engine", 10, contfrac_engine},
      {"Bessel series and backward recurrence", 30, bessel_checks},
      {"Newton quadratic shrinkage, division-free inverse roots", 5, newton_checks},
      {"rounding model against the rational oracle", 10, rounding_model},
  };
  return list;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

CheckResult run_criterion(int id) {
  const Criterion& c = criteria().at(static_cast<std::size_t>(id - 1));
  CheckResult r;
  r.id = id;
  r.name = c.name;
  r.limit_seconds = c.limit;
  Log log;
  const auto start = std::chrono::steady_clock::now();
  std::string extra;
  try {
    extra = c.body(log);
  } catch (const std::exception& e) {
    log.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = log.ok() && r.seconds < c.limit;
  r.detail = log.summary(extra);
  if (log.ok() && !r.pass) r.detail += "; took " + fmt(r.seconds) + " s, limit " + fmt(c.limit, 0) + " s";
  return r;
}

std::vector<CheckResult> acceptance_criteria() {
  std::vector<CheckResult> out;
  for (int id = 1; id <= criterion_count(); ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace vp::selftest
