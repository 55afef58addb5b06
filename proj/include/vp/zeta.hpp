#pragma once

#include <cstdint>
#include <vector>

#include "vp/real.hpp"
#include "vp/runinfo.hpp"

namespace vp::zeta {

// Euler–Maclaurin summation for real s ≠ 1:
//   ζ(s) = Σ_{j<p} j^(−s) + ½p^(−s) + p^(1−s)/(s−1) + Σ_{k≤m} T_{k,p}(s) + E,
//   T_{k,p}(s) = C_k·p^(1−s−2k)·Π_{i=0}^{2k−2}(s+i),
// with |E| < |T_{m+1,p}(s)| for real s > −(2m+1).

struct EmParams {
  std::int64_t p = 1;
  int m = 0;
  // log2 of the certified bound on |E|; −inf when the sum is exact.
  double err_bound_log2 = 0.0;
};

// Starts from p = max(10, ⌈n·ln 2/2π⌉ + ⌈|s|/2⌉) (or p_min if larger) and
// grows m until |T_{m+1,p}| ≤ 2^(−n−2); doubles p when the terms turn upward
// first. Non-positive integers s = −q use p = 1, m = ⌈q/2⌉, which is exact.
EmParams choose_params(const VpReal& s, int n, std::int64_t p_min = 0);

// T_{k,p}(s) to relative precision 2^(−n).
VpReal em_term(const VpReal& s, std::int64_t p, int k, int n);
// log2 |T_{k,p}(s)| for k = 1..kmax, from low-precision Bernoulli values.
std::vector<double> term_magnitudes(const VpReal& s, std::int64_t p, int kmax);

// Absolute error ≤ 2^(−n).
VpReal zeta(const VpReal& s, int n, RunInfo* info = nullptr);
VpReal zeta_with_params(const VpReal& s, int n, const EmParams& params, RunInfo* info = nullptr);

}  // namespace vp::zeta
