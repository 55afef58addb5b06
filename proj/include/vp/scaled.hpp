#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace vp {

// Low-precision magnitude with a side exponent: value = m·2^e, |m| in [0.5, 1)
// or m == 0. Covers ratios far below the native double range.
struct Scaled {
  double m = 0.0;
  std::int64_t e = 0;

  static Scaled make(double v, std::int64_t e2 = 0) {
    Scaled s;
    if (v == 0.0 || !std::isfinite(v)) {
      s.m = v;
      return s;
    }
    int k = 0;
    s.m = std::frexp(v, &k);
    s.e = e2 + k;
    return s;
  }

  bool is_zero() const { return m == 0.0; }

  double log2_abs() const {
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  }

  double to_double() const { return std::ldexp(m, static_cast<int>(e)); }

  friend Scaled operator*(Scaled a, Scaled b) { return make(a.m * b.m, a.e + b.e); }
  friend Scaled operator/(Scaled a, Scaled b) { return make(a.m / b.m, a.e - b.e); }
  friend Scaled operator-(Scaled a) { return Scaled{-a.m, a.e}; }

  friend Scaled operator+(Scaled a, Scaled b) {
    if (a.m == 0.0) return b;
    if (b.m == 0.0) return a;
    if (a.e < b.e) std::swap(a, b);
    std::int64_t d = a.e - b.e;
    if (d > 1100) return a;
    return make(a.m + std::ldexp(b.m, -static_cast<int>(d)), a.e);
  }
  friend Scaled operator-(Scaled a, Scaled b) { return a + (-b); }
};

}  // namespace vp
