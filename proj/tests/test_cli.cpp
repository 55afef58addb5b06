#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "vp/agm.hpp"
#include "vp/cli.hpp"
#include "vp/real.hpp"

using namespace vp;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

}  // namespace

TEST_CASE("digit conversions") {
  CHECK(cli::display_digits(64) == 22);
  CHECK(cli::bits_for_digits(50) == 167);
  CHECK(cli::bits_for_digits(1) == 4);
}

TEST_CASE("exp(1) to 50 digits") {
  Outcome o = run({"eval", "--fn", "exp", "--x", "1", "--digits", "50"});
  CHECK(o.code == 0);
  CHECK(o.out == "2.7182818284590452353602874713526624977572470937000\n");
}

TEST_CASE("pi at 64 bits is a prefix of a longer run") {
  Outcome a = run({"eval", "--fn", "pi", "--bits", "64"});
  Outcome b = run({"eval", "--fn", "pi", "--bits", "256"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  std::string sa = a.out.substr(0, a.out.size() - 1);
  CHECK(sa.size() == 23);  // 22 digits and the point
  // The two guard digits need not match; the value agrees to the precision asked for.
  Context ctx = Context::for_bits(300);
  CHECK(agreement_bits(parse(sa, ctx), parse(b.out.substr(0, b.out.size() - 1), ctx)) >= 63);
  CHECK(sa.compare(0, 20, "3.14159265358979323846", 0, 20) == 0);
}

TEST_CASE("error exit codes") {
  Outcome pole = run({"eval", "--fn", "zeta", "--x", "1", "--bits", "64"});
  CHECK(pole.code == 2);
  CHECK(pole.err.find("pole") != std::string::npos);
  CHECK(run({"eval", "--fn", "ln", "--x", "-1", "--bits", "64"}).code == 2);
  CHECK(run({"eval", "--fn", "exp", "--x", "1"}).code == 2);
  CHECK(run({"eval", "--fn", "exp", "--x", "1", "--bits", "64", "--digits", "20"}).code == 2);
  CHECK(run({"eval", "--fn", "exp", "--x", "1", "--bits", "4"}).code == 2);
  CHECK(run({"eval", "--fn", "nosuch", "--x", "1", "--bits", "64"}).code == 2);
  CHECK(run({"eval", "--fn", "exp", "--x", "1.2.3", "--bits", "64"}).code == 2);
  CHECK(run({"eval", "--fn", "exp", "--bits", "64"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  Outcome asym = run({"eval", "--fn", "e1", "--x", "5", "--method", "asymptotic", "--bits", "64"});
  CHECK(asym.code == 3);
  CHECK(asym.err.find("'contfrac' admits") != std::string::npos);
}

TEST_CASE("structured output round-trips") {
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"eval", "--fn", "exp", "--x", "0.7", "--bits", "100", "--json"},
           {"eval", "--fn", "besselj", "--nu", "2", "--x", "30", "--bits", "128", "--json"},
           {"eval", "--fn", "e1", "--x", "3", "--bits", "90", "--json", "--verbose"},
           {"eval", "--fn", "zeta", "--x", "2.5", "--bits", "80", "--json", "--verbose"},
           {"eval", "--fn", "agm", "--x", "1", "--y", "2", "--bits", "70", "--json"}}) {
    Outcome o = run(args);
    REQUIRE(o.code == 0);
    auto j = nlohmann::json::parse(o.out);
    for (const char* key : {"function", "input", "bits", "method", "value", "work_bits", "terms", "elapsed"}) {
      CHECK(j.contains(key));
    }
    // Re-evaluate as text at the same precision and compare the parsed values.
    std::string value = j["value"];
    VpReal parsed = parse(value, Context(64));
    Context same(std::max(2, parsed.size()));
    CHECK(parse(value, same) == parsed);
  }
}

TEST_CASE("structured value equals the internal value") {
  Outcome o = run({"eval", "--fn", "pi", "--bits", "200", "--json"});
  REQUIRE(o.code == 0);
  auto j = nlohmann::json::parse(o.out);
  VpReal internal = agm::compute_pi(200);
  CHECK(parse(j["value"].get<std::string>(), Context(std::max(2, internal.size()))) == internal);
  CHECK(j["method"] == "agm");
  CHECK(j["bits"] == 200);
}

TEST_CASE("every function evaluates") {
  const std::vector<std::vector<std::string>> cases{
      {"--fn", "exp", "--x", "-3"},
      {"--fn", "ln", "--x", "10"},
      {"--fn", "sqrt", "--x", "2"},
      {"--fn", "invroot", "--x", "8", "--m", "3"},
      {"--fn", "erf", "--x", "0.5"},
      {"--fn", "e1", "--x", "1"},
      {"--fn", "zeta", "--x", "3"},
      {"--fn", "besselj", "--nu", "1", "--x", "2"},
      {"--fn", "gamma_const"},
      {"--fn", "pi"},
      {"--fn", "bernoulli", "--k", "3"},
      {"--fn", "agm", "--x", "1", "--y", "0.5"},
      {"--fn", "elliptick", "--x", "0.5"},
  };
  const std::vector<std::string> want{
      "0.04978706836786394297", "2.302585092994045684017", "1.414213562373095048801",
      "0.5000000000000000",     "0.520499877813046537682", "0.2193839343955202736771",
      "1.2020569031595942854", "0.5767248077568733872024", "0.5772156649015328606065",
      "3.141592653589793238462", "0.02380952380952380952381", "0.7283955155234534345932",
      "2.156515647499643235439"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::vector<std::string> args{"eval"};
    args.insert(args.end(), cases[i].begin(), cases[i].end());
    args.insert(args.end(), {"--bits", "64"});
    Outcome o = run(args);
    INFO(cases[i][1] << ": " << o.err);
    REQUIRE(o.code == 0);
    CHECK(o.out.substr(0, 16) == want[i].substr(0, 16));
  }
}

TEST_CASE("verbose metadata") {
  Outcome o = run({"eval", "--fn", "zeta", "--x", "3", "--bits", "64", "--verbose"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("method: euler-maclaurin") != std::string::npos);
  CHECK(o.out.find("\np: ") != std::string::npos);
  CHECK(o.out.find("\nm: ") != std::string::npos);
  Outcome p = run({"eval", "--fn", "pi", "--bits", "64", "--verbose"});
  CHECK(p.out.find("method: agm") != std::string::npos);
}

TEST_CASE("cross-checks") {
  const int n = 64;
  const double x = 0.1 * n * 0.6931471805599453;
  Outcome a = run({"xcheck", "--fn", "e1", "--x", std::to_string(x), "--method", "series,cf", "--bits", "64"});
  CHECK(a.code == 0);
  CHECK(a.out.find("PASS") != std::string::npos);
  Outcome b = run({"xcheck", "--fn", "bernoulli", "--k", "1", "--method", "stable,contour", "--bits", "64", "--json"});
  CHECK(b.code == 0);
  auto j = nlohmann::json::parse(b.out);
  CHECK(j["pass"] == true);
  CHECK(j["agreement_bits"].get<int>() <= 64);
  Outcome c = run({"xcheck", "--fn", "e1", "--x", "89", "--method", "series,cf", "--bits", "64"});
  CHECK(c.code == 3);
  CHECK(c.err.find("series") != std::string::npos);
  CHECK(c.err.find("'asymptotic' admits") != std::string::npos);
  Outcome d = run({"xcheck", "--fn", "besselj", "--nu", "3", "--x", "6", "--method", "series,backward", "--bits", "96"});
  CHECK(d.code == 0);
  CHECK(run({"xcheck", "--fn", "e1", "--x", "1", "--method", "series", "--bits", "64"}).code == 2);
  CHECK(run({"xcheck", "--fn", "zeta", "--x", "3", "--method", "a,b", "--bits", "64"}).code == 2);
}

TEST_CASE("asymptotic rejection names its regime") {
  Outcome o = run({"xcheck", "--fn", "e1", "--x", "10", "--method", "asymptotic,cf", "--bits", "64"});
  CHECK(o.code == 3);
  CHECK(o.err.find("x > n ln 2 + O(ln n)") != std::string::npos);
}

TEST_CASE("constants and tables") {
  Outcome pi = run({"const", "pi", "--digits", "30"});
  CHECK(pi.out == "3.14159265358979323846264338328\n");
  Outcome g = run({"const", "gamma", "--digits", "20"});
  CHECK(g.out == "0.57721566490153286061\n");
  Outcome l = run({"const", "ln2", "--digits", "20"});
  CHECK(l.out == "0.69314718055994530942\n");
  CHECK(run({"const", "tau", "--bits", "64"}).code == 2);
  Outcome t = run({"bernoulli", "--kmax", "3", "--method", "contour", "--digits", "20"});
  CHECK(t.code == 0);
  CHECK(t.out.find("1 0.16666666666666666667\n") == 0);
  CHECK(t.out.find("2 -0.033333333333333333333\n") != std::string::npos);
  Outcome s = run({"bernoulli", "--kmax", "2", "--method", "stable", "--bits", "64", "--json"});
  CHECK(s.code == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 2);
  CHECK(run({"bernoulli", "--kmax", "2", "--method", "magic", "--bits", "64"}).code == 2);
}

TEST_CASE("selftest exit status") {
  Outcome ok = run({"selftest", "--bits", "128"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  Outcome bad = run({"selftest", "--bits", "128", "--inject-cache-fault"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("cache entry 'pi'") != std::string::npos);
}
