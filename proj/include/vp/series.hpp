#pragma once

#include <cstdint>
#include <limits>

#include "vp/complex.hpp"
#include "vp/real.hpp"
#include "vp/runinfo.hpp"

namespace vp::series {

struct SeriesRun {
  std::int64_t terms_used = 0;
  double max_term_log2 = -std::numeric_limits<double>::infinity();
  int work_precision_bits = 0;
};

// Work precision used by the reduced-argument kernels: n + ⌈log2 n⌉ + 4.
int kernel_work_bits(int n);
// Hard iteration cap for any series loop at the given work precision.
std::int64_t iteration_cap(int work_bits);

// Taylor sum for exp with |x| ≤ 1; absolute error ≤ 2^(−n).
VpReal exp_reduced(const VpReal& x, int n, SeriesRun* run = nullptr);
VpComplex exp_reduced(const VpComplex& z, int n, SeriesRun* run = nullptr);

struct ExpOptions {
  // Halving count k = ⌊c·√n⌋ + ⌈log2 max(1, |x|)⌉.
  double halving_c = 1.0;
};

int halving_count(const VpReal& x, int n, double c = 1.0);

// exp(x) to relative precision 2^(−n).
VpReal exp(const VpReal& x, int n, const ExpOptions& options = {}, RunInfo* info = nullptr);

// Direct Taylor summation at ctx with no argument reduction and no guard
// digits. Loses about |x|·log2 e bits for negative x.
VpReal exp_taylor(const VpReal& x, const Context& ctx, SeriesRun* run = nullptr);

// erf(x) to absolute precision 2^(−n), dispatching between the alternating
// series (|x| ≤ 1), the positive series times exp(−x²), and ±1.
VpReal erf(const VpReal& x, int n, RunInfo* info = nullptr);
VpReal erf_alternating(const VpReal& x, int n, SeriesRun* run = nullptr);
VpReal erf_positive(const VpReal& x, int n, SeriesRun* run = nullptr);
// Beyond this |x| the result rounds to ±1 at n bits.
double erf_saturation_point(int n);

// Euler's constant from γ = exp(−X)·Σ H_j X^j/j! − ln X, neglecting E1(X).
std::int64_t gamma_parameter(int n);
VpReal euler_gamma_series(int n, std::int64_t X, SeriesRun* run = nullptr);
VpReal euler_gamma(int n);

}  // namespace vp::series
