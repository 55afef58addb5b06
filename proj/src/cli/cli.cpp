#include "vp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vp/agm.hpp"
#include "vp/bernoulli.hpp"
#include "vp/bessel.hpp"
#include "vp/expint.hpp"
#include "vp/newton.hpp"
#include "vp/selftest.hpp"
#include "vp/series.hpp"
#include "vp/zeta.hpp"

namespace vp::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kLog10Of2 = 0.30102999566398120;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Regime rejection raised by the front end before calling a method.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Precision {
  int bits = 0;
  int digits = 0;  // printed significant digits
};

struct PrecisionFlags {
  int bits = 0;
  int digits = 0;
  CLI::Option* bits_opt = nullptr;
  CLI::Option* digits_opt = nullptr;

  void attach(CLI::App* app) {
    bits_opt = app->add_option("--bits", bits, "Target precision in bits");
    digits_opt = app->add_option("--digits", digits, "Target precision in decimal digits");
  }

  Precision resolve() const {
    const bool b = bits_opt->count() > 0;
    const bool d = digits_opt->count() > 0;
    if (b && d) throw UsageError("give either --bits or --digits, not both");
    if (!b && !d) throw UsageError("a precision is required: --bits N or --digits D");
    Precision p;
    if (b) {
      p.bits = bits;
      p.digits = display_digits(bits);
    } else {
      if (digits < 1) throw UsageError("--digits must be positive");
      p.bits = bits_for_digits(digits);
      p.digits = digits;
    }
    if (p.bits < 8) throw UsageError("precision must be at least 8 bits");
    return p;
  }
};

struct Request {
  std::string fn;
  std::string x;
  std::string y;
  std::string method = "auto";
  std::int64_t nu = 0;
  std::int64_t m = 2;
  std::int64_t k = 1;
  bool as_json = false;
  bool verbose = false;
  CLI::Option* x_opt = nullptr;
  CLI::Option* y_opt = nullptr;
  CLI::Option* nu_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  PrecisionFlags precision;

  void attach(CLI::App* app, bool method_pair) {
    app->add_option("--fn", fn, "Function name")->required();
    x_opt = app->add_option("--x", x, "Argument as a decimal string");
    y_opt = app->add_option("--y", y, "Second argument (agm)");
    nu_opt = app->add_option("--nu", nu, "Order (besselj)");
    m_opt = app->add_option("--m", m, "Root index (invroot)");
    k_opt = app->add_option("--k", k, "Index (bernoulli: B_2k)");
    if (method_pair) {
      app->add_option("--method", method, "Two methods to compare, e.g. series,cf")->required();
    } else {
      app->add_option("--method", method, "auto or an explicit method tag");
    }
    app->add_flag("--json", as_json, "Emit a machine-readable record");
    app->add_flag("--verbose", verbose, "Print evaluation metadata");
    precision.attach(app);
  }

  json input() const {
    json in = json::object();
    if (x_opt->count()) in["x"] = x;
    if (y_opt->count()) in["y"] = y;
    if (nu_opt->count()) in["nu"] = nu;
    if (m_opt->count()) in["m"] = m;
    if (k_opt->count()) in["k"] = k;
    return in;
  }
};

struct Evaluated {
  VpReal value;
  RunInfo info;
  double elapsed = 0.0;
};

VpReal argument(const Request& r, CLI::Option* opt, const std::string& text, const char* flag, int bits) {
  if (!opt->count()) throw UsageError("--fn " + r.fn + " needs " + flag);
  return parse(text, Context::for_bits(bits + 64));
}

void allow(const std::string& fn, const std::string& method, std::initializer_list<const char*> tags) {
  if (method == "auto") return;
  for (const char* t : tags) {
    if (method == t) return;
  }
  std::string list;
  for (const char* t : tags) list += std::string(list.empty() ? "" : ", ") + t;
  throw UsageError("unknown method '" + method + "' for " + fn + " (available: auto, " + list + ")");
}

void newton_info(RunInfo& info, const newton::NewtonTrace& trace) {
  info.method = "newton";
  info.terms = static_cast<std::int64_t>(trace.stages.size());
  if (!trace.stages.empty()) info.work_bits = trace.stages.back().precision_bits;
}

Evaluated evaluate(const Request& r, const std::string& method, int n) {
  Evaluated e;
  RunInfo& info = e.info;
  const auto start = std::chrono::steady_clock::now();
  const std::string& fn = r.fn;
  auto x = [&] { return argument(r, r.x_opt, r.x, "--x", n); };
  if (fn == "exp") {
    allow(fn, method, {"series"});
    e.value = series::exp(x(), n, {}, &info);
  } else if (fn == "ln") {
    allow(fn, method, {"newton"});
    newton::NewtonTrace trace;
    e.value = newton::ln(x(), n, &trace);
    newton_info(info, trace);
  } else if (fn == "sqrt") {
    allow(fn, method, {"newton"});
    e.value = newton::sqrt(x(), n);
    info.method = "newton";
  } else if (fn == "invroot") {
    allow(fn, method, {"newton"});
    newton::NewtonTrace trace;
    e.value = newton::inv_root(x(), r.m, n, &trace);
    newton_info(info, trace);
  } else if (fn == "erf") {
    allow(fn, method, {"series"});
    e.value = series::erf(x(), n, &info);
  } else if (fn == "e1") {
    VpReal xv = x();
    if (method == "auto") {
      e.value = expint::e1(xv, n, &info);
    } else {
      auto tag = expint::parse_method(method);
      if (!tag) throw UsageError("unknown method '" + method + "' for e1 (available: auto, series, cf, asymptotic)");
      if (xv.sign() <= 0) throw DomainError("E1(x) needs x > 0");
      if (auto why = expint::rejection(*tag, xv, n)) {
        throw RegimeError(*why + "; method '" + expint::method_name(expint::choose_method(xv, n)) +
                          "' admits this input");
      }
      switch (*tag) {
        case expint::Method::series: e.value = expint::e1_series(xv, n, {}, &info); break;
        case expint::Method::contfrac: e.value = expint::e1_cf(xv, n, &info); break;
        case expint::Method::asymptotic: e.value = expint::e1_asymptotic(xv, n, &info); break;
      }
    }
  } else if (fn == "zeta") {
    allow(fn, method, {"euler-maclaurin", "em"});
    e.value = zeta::zeta(x(), n, &info);
  } else if (fn == "besselj") {
    allow(fn, method, {"series", "backward"});
    if (!r.nu_opt->count()) throw UsageError("--fn besselj needs --nu");
    VpReal xv = x();
    if (method == "series") {
      e.value = bessel::j_series(r.nu, xv, n, &info);
    } else if (method == "backward") {
      bessel::MillerRun run;
      e.value = bessel::j_backward(r.nu, xv, n, &run);
      info.method = "backward";
      info.terms = run.start_index_N;
    } else {
      e.value = bessel::j(r.nu, xv, n, &info);
    }
  } else if (fn == "gamma_const") {
    allow(fn, method, {"series"});
    series::SeriesRun run;
    const std::int64_t X = series::gamma_parameter(n);
    e.value = series::euler_gamma_series(n, X, &run);
    info.method = "series";
    info.terms = run.terms_used;
    info.work_bits = run.work_precision_bits;
    info.note("X", std::to_string(X));
  } else if (fn == "pi") {
    allow(fn, method, {"agm"});
    agm::PiTrace trace;
    e.value = agm::compute_pi(n, &trace);
    info.method = "agm";
    info.terms = trace.iterations;
    info.work_bits = trace.work_bits;
    info.note("predicted_iterations", std::to_string(trace.predicted_iterations));
  } else if (fn == "bernoulli") {
    allow(fn, method, {"stable", "contour", "unstable"});
    if (!r.k_opt->count()) throw UsageError("--fn bernoulli needs --k");
    if (r.k < 1 || r.k > 100000) throw DomainError("bernoulli needs 1 ≤ k ≤ 100000");
    const int k = static_cast<int>(r.k);
    const auto tag = method == "auto" ? bernoulli::Method::stable : *bernoulli::parse_method(method);
    bernoulli::BernoulliTable t = tag == bernoulli::Method::stable    ? bernoulli::stable(k, n)
                                  : tag == bernoulli::Method::contour ? bernoulli::contour(k, n)
                                                                      : bernoulli::unstable(k, n);
    e.value = bernoulli::b2k_from_scaled(t.c(k), k, n);
    info.method = bernoulli::method_name(tag);
    info.terms = k;
    info.work_bits = t.precision_bits;
    if (tag == bernoulli::Method::contour) info.note("points", std::to_string(bernoulli::contour_points(n)));
  } else if (fn == "agm") {
    allow(fn, method, {"agm"});
    agm::AgmTrace trace;
    VpReal a = x();
    VpReal b = argument(r, r.y_opt, r.y, "--y", n);
    e.value = agm::agm(a, b, n, &trace);
    info.method = "agm";
    info.terms = trace.iterations;
    info.work_bits = trace.work_bits;
  } else if (fn == "elliptick") {
    allow(fn, method, {"agm"});
    agm::AgmTrace trace;
    e.value = agm::elliptic_k(x(), n, &trace);
    info.method = "agm";
    info.terms = trace.iterations;
    info.work_bits = trace.work_bits;
  } else {
    throw UsageError("unknown function '" + fn +
                     "' (exp, ln, sqrt, invroot, erf, e1, zeta, besselj, gamma_const, pi, bernoulli, agm, elliptick)");
  }
  if (info.method.empty()) info.method = method;
  e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

std::string roundtrip_text(const VpReal& v) {
  return format_roundtrip(v, Context(std::max(2, v.size())));
}

json record(const std::string& function, json input, int bits, const Evaluated& e, bool verbose) {
  json j;
  j["function"] = function;
  j["input"] = std::move(input);
  j["bits"] = bits;
  j["method"] = e.info.method;
  j["value"] = roundtrip_text(e.value);
  j["work_bits"] = e.info.work_bits;
  j["terms"] = e.info.terms;
  j["elapsed"] = e.elapsed;
  if (verbose && !e.info.details.empty()) {
    json d = json::object();
    for (const auto& [k, v] : e.info.details) d[k] = v;
    j["details"] = std::move(d);
  }
  return j;
}

void print_metadata(std::ostream& out, const Evaluated& e) {
  out << "method: " << e.info.method << "\n";
  out << "terms: " << e.info.terms << "\n";
  out << "work_bits: " << e.info.work_bits << "\n";
  for (const auto& [k, v] : e.info.details) out << k << ": " << v << "\n";
  out << "elapsed: " << e.elapsed << " s\n";
}

int cmd_eval(const Request& r, std::ostream& out) {
  const Precision p = r.precision.resolve();
  Evaluated e = evaluate(r, r.method, p.bits);
  if (r.as_json) {
    json j = record(r.fn, r.input(), p.bits, e, r.verbose);
    j["digits"] = to_decimal(e.value, p.digits);
    out << j.dump() << "\n";
  } else {
    out << to_decimal(e.value, p.digits) << "\n";
    if (r.verbose) print_metadata(out, e);
  }
  return kOk;
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == s.size()) {
    throw UsageError("xcheck needs two methods, e.g. --method series,cf");
  }
  return {s.substr(0, comma), s.substr(comma + 1)};
}

int cmd_xcheck(const Request& r, std::ostream& out) {
  const Precision p = r.precision.resolve();
  if (r.fn != "e1" && r.fn != "besselj" && r.fn != "bernoulli") {
    throw UsageError("xcheck supports e1, besselj and bernoulli");
  }
  auto [ma, mb] = split_pair(r.method);
  if (ma == "auto" || mb == "auto") throw UsageError("xcheck needs explicit methods");
  Evaluated a = evaluate(r, ma, p.bits);
  Evaluated b = evaluate(r, mb, p.bits);
  const int agreement = std::min(agreement_bits(a.value, b.value), p.bits);
  const int threshold = p.bits - 8;
  const bool pass = agreement >= threshold;
  if (r.as_json) {
    json j;
    j["function"] = r.fn;
    j["input"] = r.input();
    j["bits"] = p.bits;
    j["method_a"] = a.info.method;
    j["method_b"] = b.info.method;
    j["value_a"] = roundtrip_text(a.value);
    j["value_b"] = roundtrip_text(b.value);
    j["agreement_bits"] = agreement;
    j["threshold"] = threshold;
    j["pass"] = pass;
    out << j.dump() << "\n";
  } else {
    out << a.info.method << ": " << to_decimal(a.value, p.digits) << "\n";
    out << b.info.method << ": " << to_decimal(b.value, p.digits) << "\n";
    out << "agreement_bits: " << agreement << " (threshold " << threshold << ") " << (pass ? "PASS" : "FAIL")
        << "\n";
    if (r.verbose) {
      print_metadata(out, a);
      print_metadata(out, b);
    }
  }
  return pass ? kOk : kInternal;
}

int cmd_const(const std::string& name, const PrecisionFlags& flags, bool as_json, std::ostream& out) {
  const Precision p = flags.resolve();
  Evaluated e;
  const auto start = std::chrono::steady_clock::now();
  if (name == "pi") {
    e.value = agm::pi(p.bits);
    e.info.method = "agm";
  } else if (name == "gamma") {
    e.value = series::euler_gamma(p.bits);
    e.info.method = "series";
  } else if (name == "ln2") {
    e.value = newton::ln2(p.bits);
    e.info.method = "newton";
  } else {
    throw UsageError("unknown constant '" + name + "' (pi, gamma, ln2)");
  }
  e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (as_json) {
    json j = record(name, json::object(), p.bits, e, false);
    j["digits"] = to_decimal(e.value, p.digits);
    out << j.dump() << "\n";
  } else {
    out << to_decimal(e.value, p.digits) << "\n";
  }
  return kOk;
}

int cmd_bernoulli(int kmax, const std::string& method, const PrecisionFlags& flags, bool as_json, bool scaled,
                  std::ostream& out) {
  const Precision p = flags.resolve();
  if (kmax < 1) throw UsageError("--kmax must be at least 1");
  auto tag = bernoulli::parse_method(method);
  if (!tag) throw UsageError("unknown method '" + method + "' (stable, contour, unstable)");
  const auto start = std::chrono::steady_clock::now();
  bernoulli::BernoulliTable t = *tag == bernoulli::Method::stable    ? bernoulli::stable(kmax, p.bits)
                                : *tag == bernoulli::Method::contour ? bernoulli::contour(kmax, p.bits)
                                                                     : bernoulli::unstable(kmax, p.bits);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (int k = 1; k <= kmax; ++k) {
    Evaluated e;
    e.value = scaled ? t.c(k) : bernoulli::b2k_from_scaled(t.c(k), k, p.bits);
    e.info.method = bernoulli::method_name(*tag);
    e.info.terms = kmax;
    e.info.work_bits = t.precision_bits;
    e.elapsed = elapsed;
    if (as_json) {
      json j = record(scaled ? "bernoulli_scaled" : "bernoulli", json{{"k", k}}, p.bits, e, false);
      j["digits"] = to_decimal(e.value, p.digits);
      out << j.dump() << "\n";
    } else {
      out << k << " " << to_decimal(e.value, p.digits) << "\n";
    }
  }
  return kOk;
}

int cmd_selftest(bool full, bool inject, int bits, bool as_json, std::ostream& out) {
  if (bits < 8) throw UsageError("precision must be at least 8 bits");
  selftest::Options opt;
  opt.level = full ? selftest::Level::full : selftest::Level::quick;
  opt.inject_cache_fault = inject;
  opt.bits = bits;
  auto results = selftest::run(opt);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    if (as_json) {
      json j{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"elapsed", r.seconds}};
      out << j.dump() << "\n";
    } else {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(3);
      t << r.seconds;
      out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ", " << t.str() << " s)\n";
    }
  }
  if (!as_json) {
    out << "selftest " << (full ? "full" : "quick") << ": " << results.size() - failed << " passed, " << failed
        << " failed\n";
  }
  return failed == 0 ? kOk : kInternal;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::overflow:
    case ErrorKind::division_by_zero:
    case ErrorKind::parse:
    case ErrorKind::degenerate:
      return kDomain;
    case ErrorKind::insufficient_precision:
    case ErrorKind::no_convergence:
      return kRegime;
    case ErrorKind::internal:
      break;
  }
  return kInternal;
}

}  // namespace

int display_digits(int bits) { return static_cast<int>(std::ceil(bits * kLog10Of2)) + 2; }

int bits_for_digits(int digits) { return static_cast<int>(std::ceil(digits / kLog10Of2)); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-precision evaluation of elementary and special functions", "vpcalc"};
  app.require_subcommand(1);

  Request eval_req;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a function");
  eval_req.attach(eval, false);

  Request xcheck_req;
  CLI::App* xcheck = app.add_subcommand("xcheck", "Evaluate by two methods and compare");
  xcheck_req.attach(xcheck, true);

  std::string const_name;
  PrecisionFlags const_prec;
  bool const_json = false;
  CLI::App* konst = app.add_subcommand("const", "Print a constant: pi, gamma or ln2");
  konst->add_option("name", const_name, "pi, gamma or ln2")->required();
  const_prec.attach(konst);
  konst->add_flag("--json", const_json, "Emit a machine-readable record");

  int kmax = 0;
  std::string bern_method = "stable";
  PrecisionFlags bern_prec;
  bool bern_json = false;
  bool bern_scaled = false;
  CLI::App* bern = app.add_subcommand("bernoulli", "Print B_2k for k = 1..kmax");
  bern->add_option("--kmax", kmax, "Largest index")->required();
  bern->add_option("--method", bern_method, "stable, contour or unstable");
  bern->add_flag("--scaled", bern_scaled, "Print C_k = B_2k/(2k)! instead");
  bern_prec.attach(bern);
  bern->add_flag("--json", bern_json, "Emit one record per entry");

  bool full = false;
  bool inject = false;
  bool st_json = false;
  int st_bits = 256;
  CLI::App* st = app.add_subcommand("selftest", "Run the built-in checks");
  st->add_flag("--full", full, "Also run the acceptance criteria");
  st->add_flag("--inject-cache-fault", inject, "Corrupt a cached constant before verification");
  st->add_option("--bits", st_bits, "Precision of the structural checks");
  st->add_flag("--json", st_json, "Emit one record per check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }

  try {
    if (*eval) return cmd_eval(eval_req, out);
    if (*xcheck) return cmd_xcheck(xcheck_req, out);
    if (*konst) return cmd_const(const_name, const_prec, const_json, out);
    if (*bern) return cmd_bernoulli(kmax, bern_method, bern_prec, bern_json, bern_scaled, out);
    if (*st) return cmd_selftest(full, inject, st_bits, st_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return kRegime;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    err << (code == kRegime ? "regime error: " : code == kDomain ? "domain error: " : "internal error: ")
        << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  err << "error: no command\n";
  return kDomain;
}

}  // namespace vp::cli
