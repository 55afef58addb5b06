#include "vp/bernoulli.hpp"

#include <algorithm>
#include <cmath>

#include "vp/agm.hpp"
#include "vp/cache.hpp"
#include "vp/series.hpp"

namespace vp::bernoulli {

namespace {

int ceil_log2(std::int64_t v) {
  int k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

void require_kmax(int kmax) {
  if (kmax < 1) throw DomainError("Bernoulli table needs kmax ≥ 1");
}

// e^(iθ) for any real θ: halve into the unit disc, then square back.
VpComplex unit_root(const VpReal& theta, int n) {
  int h = 0;
  VpReal t = theta;
  while (compare_abs(t, from_int(1)) > 0) {
    t = scale2(t, -1);
    ++h;
  }
  const Context ctx = Context::for_bits(n + 2 * h + 4);
  VpComplex z = series::exp_reduced(VpComplex{VpReal(), t}, n + 2 * h + 4);
  for (int i = 0; i < h; ++i) z = mul(z, z, ctx);
  return round(z, Context::for_bits(n + 2));
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::stable: return "stable";
    case Method::contour: return "contour";
    case Method::unstable: return "unstable";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "stable") return Method::stable;
  if (name == "contour") return Method::contour;
  if (name == "unstable") return Method::unstable;
  return std::nullopt;
}

std::vector<VpReal> unstable_from(const VpReal& c1, int kmax, const Context& ctx) {
  require_kmax(kmax);
  // h[i] = 1/(2i+1)!
  std::vector<VpReal> h(static_cast<std::size_t>(kmax) + 1);
  h[0] = from_int(1);
  for (int i = 1; i <= kmax; ++i) {
    h[i] = div_small(h[i - 1], static_cast<std::int64_t>(2 * i) * (2 * i + 1), ctx);
  }
  std::vector<VpReal> c(static_cast<std::size_t>(kmax));
  c[0] = round(c1, ctx);
  for (int k = 2; k <= kmax; ++k) {
    VpReal acc = div_small(mul_small(h[k], 2 * k - 1, ctx), 2, ctx);
    for (int i = 1; i < k; ++i) acc = sub(acc, mul(c[k - i - 1], h[i], ctx), ctx);
    c[k - 1] = std::move(acc);
  }
  return c;
}

BernoulliTable unstable(int kmax, int n) {
  require_kmax(kmax);
  const Context ctx = Context::for_bits(n);
  BernoulliTable t;
  t.precision_bits = n;
  t.method = Method::unstable;
  t.scaled = unstable_from(div_small(from_int(1), 12, ctx), kmax, ctx);
  return t;
}

BernoulliTable stable(int kmax, int n) {
  require_kmax(kmax);
  const Context ctx = Context::for_bits(n);
  // g[i] = 1/((2i+1)!·4^i)
  std::vector<VpReal> g(static_cast<std::size_t>(kmax) + 1);
  g[0] = from_int(1);
  for (int i = 1; i <= kmax; ++i) {
    g[i] = div_small(g[i - 1], static_cast<std::int64_t>(8 * i) * (2 * i + 1), ctx);
  }
  BernoulliTable t;
  t.precision_bits = n;
  t.method = Method::stable;
  t.scaled.resize(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    VpReal acc = mul_small(g[k], 2 * k, ctx);
    for (int i = 1; i < k; ++i) acc = sub(acc, mul(t.scaled[k - i - 1], g[i], ctx), ctx);
    t.scaled[k - 1] = std::move(acc);
  }
  return t;
}

std::vector<VpReal> stable_cached(int kmax, int n) {
  const int bits = (std::max(n, 32) + 31) / 32 * 32;
  return ConstantCache::global().table("bernoulli@" + std::to_string(bits), kmax,
                                       [bits](int size) { return stable(size, bits).scaled; });
}

int contour_points(int n) {
  const double r = n * std::log(2.0) / std::log(2 * M_PI) + 8;
  return 4 * static_cast<int>(std::ceil(r / 4));
}

VpComplex generating_function(const VpComplex& z, int n) {
  const Context ctx = Context::for_bits(n + 8);
  VpComplex e = series::exp_reduced(z, n + 8);
  VpComplex d = sub(e, VpComplex{from_int(1), VpReal()}, ctx);
  VpComplex q = div(z, d, ctx);
  VpComplex half{scale2(z.re, -1), scale2(z.im, -1)};
  return round(add(q, half, ctx), Context::for_bits(n));
}

BernoulliTable contour(int jmax, int n) {
  const int k = contour_points(n);
  if (k < 4 * (jmax + 1)) {
    throw DomainError("contour needs more points than 4·(jmax+1); raise the precision or lower jmax");
  }
  return contour_with_points(jmax, k, n);
}

BernoulliTable contour_with_points(int jmax, int k, int n) {
  require_kmax(jmax);
  if (k % 4 != 0 || k <= 2 * jmax) throw DomainError("contour point count must be a multiple of 4 above 2·jmax");
  // The values carry the precision the point count certifies, (2π)^(−k),
  // when that is finer than n. C_j is about (2π)^(−2j) while the sampled
  // values are O(1).
  const int cert = std::max(n, static_cast<int>(std::ceil(k * std::log2(2 * M_PI))));
  const int nw = cert + static_cast<int>(std::ceil(2.0 * jmax * std::log2(2 * M_PI))) + 2 * ceil_log2(k) + 8;
  const Context ctx = Context::for_bits(nw);
  const VpReal theta = div_small(scale2(agm::pi(nw + 8), 1), k, ctx);
  const VpComplex step = unit_root(theta, nw + 8);

  std::vector<VpReal> acc(static_cast<std::size_t>(jmax));
  VpComplex z{from_int(1), VpReal()};
  const int quarter = k / 4;
  for (int m = 0; m <= quarter; ++m) {
    const VpComplex f = generating_function(z, nw);
    // Points m and k/2 − m are conjugate after using f(−z) = f(z).
    const std::int64_t weight = (m == 0 || m == quarter) ? 1 : 2;
    const VpComplex zc = conj(z);
    const VpComplex w = mul(zc, zc, ctx);
    VpComplex p = w;
    for (int j = 1; j <= jmax; ++j) {
      VpReal re = sub(mul(f.re, p.re, ctx), mul(f.im, p.im, ctx), ctx);
      acc[j - 1] = add(acc[j - 1], mul_small(re, weight, ctx), ctx);
      if (j < jmax) p = mul(p, w, ctx);
    }
    z = mul(z, step, ctx);
  }
  BernoulliTable t;
  t.precision_bits = n;
  t.method = Method::contour;
  const Context out = Context::for_bits(cert + 8);
  for (auto& a : acc) a = round(div_small(mul_small(a, 2, ctx), k, ctx), out);
  t.scaled = std::move(acc);
  return t;
}

VpReal b2k_from_scaled(const VpReal& c, int k, int n) {
  const double bits = std::lgamma(2.0 * k + 1) / std::log(2.0);
  const Context big(static_cast<int>(bits / 32) + 3);
  VpReal f = from_int(1);
  for (int i = 2; i <= 2 * k; ++i) f = mul_small(f, i, big);
  return mul(c, f, Context::for_bits(n));
}

}  // namespace vp::bernoulli
