#pragma once

#include <cstdint>
#include <vector>

#include "vp/real.hpp"
#include "vp/runinfo.hpp"

namespace vp::bessel {

// Bessel functions of the first kind J_ν(x), integer ν.

struct MillerRun {
  std::int64_t start_index_N = 0;
  // Unnormalized y_0..y_N from the downward recurrence.
  std::vector<VpReal> trial_values;
  VpReal norm;  // y_0 + 2Σ y_{2m}
};

// (x/2)^ν Σ_j (−x²/4)^j/(j!·(ν+j)!), for x ≥ 0. Absolute error ≤ 2^(−n).
VpReal j_series(std::int64_t nu, const VpReal& x, int n, RunInfo* info = nullptr);

// Smallest N > max(ν, ⌈x⌉) with N·ln(2N/(e·x)) > (n + ⌈log2 n⌉ + 4)·ln 2.
std::int64_t start_index(std::int64_t nu, const VpReal& x, int n);

// Downward recurrence y_{k−1} = (2k/x)y_k − y_{k+1} from y_{N+1} = 0, y_N = 1,
// normalized by y_0 + 2Σ y_{2m} = 1. x > 0.
VpReal j_backward(std::int64_t nu, const VpReal& x, int n, MillerRun* run = nullptr);
VpReal j_backward_from(std::int64_t nu, const VpReal& x, int n, std::int64_t N, MillerRun* run = nullptr);

// Any integer ν and real x: series for |x| ≤ max(4, n/8), else the downward
// recurrence. Absolute error ≤ 2^(−n).
VpReal j(std::int64_t nu, const VpReal& x, int n, RunInfo* info = nullptr);

}  // namespace vp::bessel
