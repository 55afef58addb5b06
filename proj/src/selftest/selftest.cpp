#include <chrono>
#include <cmath>
#include <functional>

#include "vp/agm.hpp"
#include "vp/bernoulli.hpp"
#include "vp/bessel.hpp"
#include "vp/cache.hpp"
#include "vp/contfrac.hpp"
#include "vp/expint.hpp"
#include "vp/newton.hpp"
#include "vp/selftest.hpp"
#include "vp/series.hpp"
#include "vp/zeta.hpp"

namespace vp::selftest {

namespace {

const char* kPi50 = "3.1415926535897932384626433832795028841971693993751";
const char* kE50 = "2.7182818284590452353602874713526624977572470937000";

CheckResult timed(const std::string& name, const std::function<std::string(bool&)>& body) {
  CheckResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    bool ok = true;
    r.detail = body(ok);
    r.pass = ok;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string bits_detail(int got, int need) {
  return std::to_string(got) + " bits, need " + std::to_string(need);
}

std::vector<CheckResult> quick_checks(int n) {
  std::vector<CheckResult> out;
  auto exact = [&](const std::string& name, const std::function<bool()>& f) {
    out.push_back(timed(name, [&](bool& ok) {
      ok = f();
      return std::string(ok ? "exact" : "mismatch");
    }));
  };
  exact("exp(0) = 1", [&] { return series::exp(VpReal(), n) == from_int(1); });
  exact("ln(1) = 0", [&] { return newton::ln(from_int(1), n).is_zero(); });
  exact("sqrt(9) = 3", [&] { return newton::sqrt(from_int(9), n) == from_int(3); });
  exact("inv_root(4, 2) = 1/2", [&] { return newton::inv_root(from_int(4), 2, n) == from_double(0.5); });
  exact("agm(1, 1) = 1", [&] { return agm::agm(from_int(1), from_int(1), n) == from_int(1); });
  exact("zeta(0) = -1/2", [&] { return zeta::zeta(VpReal(), n) == from_double(-0.5); });
  exact("J0(0) = 1", [&] { return bessel::j(0, VpReal(), n) == from_int(1); });
  exact("one-term fraction 1/2", [&] {
    auto cf = contfrac::from_terms("half", {{from_int(1), from_int(2)}});
    return contfrac::eval_backward(cf, 1, Context::for_bits(n)) == from_double(0.5);
  });
  out.push_back(timed("C1 = 1/12", [&](bool& ok) {
    Context ctx = Context::for_bits(n + 8);
    int a = agreement_bits(bernoulli::stable(1, n).c(1), div_small(from_int(1), 12, ctx));
    ok = a >= n;
    return bits_detail(a, n);
  }));
  out.push_back(timed("pi to 50 digits", [&](bool& ok) {
    std::string s = to_decimal(agm::pi(200), 50);
    ok = s == std::string(kPi50).substr(0, s.size()) && s.size() >= 50;
    return s;
  }));
  out.push_back(timed("exp(1) to 50 digits", [&](bool& ok) {
    std::string s = to_decimal(series::exp(from_int(1), 170), 50);
    ok = s == kE50;
    return s;
  }));
  out.push_back(timed("6 zeta(2) = pi^2 at 128 bits", [&](bool& ok) {
    Context ctx = Context::for_bits(160);
    VpReal d = sub(mul_small(zeta::zeta(from_int(2), 128), 6, ctx), square(agm::pi(160), ctx), ctx);
    ok = log2_abs(d) <= -122;
    return "difference 2^" + std::to_string(static_cast<int>(std::floor(log2_abs(d))));
  }));
  out.push_back(timed("E1(1) by series and continued fraction", [&](bool& ok) {
    const int bits = 128;
    int a = agreement_bits(expint::e1_series(from_int(1), bits), expint::e1_cf(from_int(1), bits));
    ok = a >= bits - 6;
    return bits_detail(a, bits - 6);
  }));
  out.push_back(timed("J3(10) by series and downward recurrence", [&](bool& ok) {
    const int bits = 128;
    int a = absolute_agreement_bits(bessel::j_series(3, from_int(10), bits),
                                    bessel::j_backward(3, from_int(10), bits));
    ok = a >= bits - 6;
    return bits_detail(a, bits - 6);
  }));
  out.push_back(timed("Euler gamma is independent of the series parameter", [&](bool& ok) {
    const int bits = 128;
    std::int64_t x = series::gamma_parameter(bits);
    int a = agreement_bits(series::euler_gamma_series(bits, x), series::euler_gamma_series(bits, 2 * x));
    ok = a >= bits - 4;
    return bits_detail(a, bits - 4);
  }));
  out.push_back(timed("C1..C4 by contour and stable recurrence", [&](bool& ok) {
    const int bits = 96;
    auto c = bernoulli::contour(4, bits);
    auto s = bernoulli::stable(4, bits);
    int worst = 1 << 20;
    for (int k = 1; k <= 4; ++k) worst = std::min(worst, agreement_bits(c.c(k), s.c(k)));
    ok = worst >= bits - 6;
    return bits_detail(worst, bits - 6);
  }));
  return out;
}

CheckResult cache_check() {
  return timed("constant cache integrity", [](bool& ok) {
    auto problems = ConstantCache::global().verify();
    ok = problems.empty();
    if (ok) return std::to_string(ConstantCache::global().entries().size()) + " entries verified";
    std::string s;
    for (const auto& p : problems) s += (s.empty() ? "" : "; ") + p;
    return s;
  });
}

}  // namespace

std::vector<CheckResult> run(const Options& options) {
  std::vector<CheckResult> out = quick_checks(options.bits);
  if (options.level == Level::full) {
    for (CheckResult& r : acceptance_criteria()) {
      r.name = "criterion " + std::to_string(r.id) + ": " + r.name;
      out.push_back(std::move(r));
    }
  }
  if (options.inject_cache_fault) {
    agm::pi(options.bits);
    ConstantCache::global().corrupt_for_testing("pi");
  }
  out.push_back(cache_check());
  return out;
}

}  // namespace vp::selftest
