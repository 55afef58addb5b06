#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vp/real.hpp"

namespace vp_test {

inline vp::VpReal random_real(std::mt19937_64& rng, int limbs, int exp_lo, int exp_hi,
                              bool allow_negative = true) {
  std::uniform_int_distribution<std::uint32_t> digit;
  std::uniform_int_distribution<int> ex(exp_lo, exp_hi);
  std::vector<vp::Limb> d(static_cast<std::size_t>(limbs));
  for (auto& v : d) v = digit(rng);
  if (d[0] == 0) d[0] = 1;
  int sign = allow_negative && (rng() & 1) ? -1 : 1;
  return vp::VpReal::from_parts(sign, ex(rng), std::move(d));
}

// Uniform-ish value in [lo, hi) with the given number of significant limbs.
inline vp::VpReal random_in(std::mt19937_64& rng, double lo, double hi, int limbs = 3) {
  std::uniform_real_distribution<double> u(lo, hi);
  vp::VpReal base = vp::from_double(u(rng));
  std::uniform_int_distribution<std::uint32_t> digit;
  std::vector<vp::Limb> tail(static_cast<std::size_t>(limbs), 0);
  for (auto& v : tail) v = digit(rng);
  vp::VpReal noise = vp::VpReal::from_parts(1, base.exponent() - 2, std::move(tail));
  return vp::add(base, noise, vp::Context(limbs + 3));
}

inline double bits_of(const vp::Context& ctx) { return ctx.precision_bits(); }

}  // namespace vp_test
