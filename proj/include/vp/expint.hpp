#pragma once

#include <optional>
#include <string>

#include "vp/contfrac.hpp"
#include "vp/real.hpp"
#include "vp/runinfo.hpp"

namespace vp::expint {

// Exponential integral E1(x) = ∫_x^∞ e^(−t)/t dt for x > 0.

enum class Method { series, contfrac, asymptotic };

// Admission interval of each method in units of L = n·ln 2. The series and
// continued-fraction intervals overlap around 0.1, the continued fraction and
// the asymptotic expansion overlap just above 1 + δ with δ = 2·log2(n)/n.
struct E1Method {
  Method tag = Method::series;
  double lo = 0.0;
  double hi = 0.0;
};

E1Method region(Method tag, int n);
std::string method_name(Method tag);
std::optional<Method> parse_method(const std::string& name);

// n·ln 2 + 2·log2(n)·ln 2: below this the asymptotic expansion cannot reach n bits.
double asymptotic_threshold(int n);

// Empty when the method accepts (x, n); otherwise the violated regime.
std::optional<std::string> rejection(Method tag, const VpReal& x, int n);

// The method e1() picks for (x, n).
Method choose_method(const VpReal& x, int n);

struct SeriesOptions {
  // Extra working bits for the alternating-sum cancellation and for the
  // smallness of the result. Off only to demonstrate the loss.
  bool cancellation_guards = true;
};

// −γ − ln x + Σ (−1)^(j−1) x^j/(j·j!). Relative error ≤ 2^(−n).
VpReal e1_series(const VpReal& x, int n, const SeriesOptions& options = {}, RunInfo* info = nullptr);
// exp(−x)·Σ (−1)^(j−1)(j−1)!/x^j truncated before the terms turn upward.
// Throws InsufficientPrecision when x is below asymptotic_threshold(n).
VpReal e1_asymptotic(const VpReal& x, int n, RunInfo* info = nullptr);
// exp(−x) times the continued fraction for exp(x)·E1(x).
VpReal e1_cf(const VpReal& x, int n, RunInfo* info = nullptr);
// Debug builds also run overlap_agreement and fail on fewer than n − 8 bits.
VpReal e1(const VpReal& x, int n, RunInfo* info = nullptr);

// Smallest pairwise agreement in bits among the methods that admit (x, n);
// empty when fewer than two do.
std::optional<int> overlap_agreement(const VpReal& x, int n);

// exp(x)·E1(x) = 1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + …))))).
contfrac::CfStream e1_stream(const VpReal& x);

}  // namespace vp::expint
