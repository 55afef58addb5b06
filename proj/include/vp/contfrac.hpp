#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vp/real.hpp"

namespace vp::contfrac {

// The fraction a1/(b1 + a2/(b2 + a3/(b3 + …))).
struct CfTerm {
  VpReal a;
  VpReal b;
};

// term(j) for j ≥ 1. Must be callable at any index in any order.
using TermFn = std::function<CfTerm(std::int64_t j)>;

struct CfStream {
  std::string label;
  TermFn term;
};

struct CfEstimate {
  std::int64_t k = 1;
  // log2 |D_k| at the stopping index; −inf when the fraction terminates.
  double d_log2 = 0.0;
};

std::int64_t default_kmax(int n);

// Smallest k with |f_k − f_{k−1}| < 2^(−n−2), found by a forward pass in
// low-precision scaled arithmetic. kmax ≤ 0 selects default_kmax(n).
CfEstimate estimate_k(const CfStream& cf, int n, std::int64_t kmax = 0);

// Value of the fraction truncated after k terms, by the tail recurrence.
VpReal eval_backward(const CfStream& cf, std::int64_t k, const Context& ctx);
// Same truncation by the P/Q recurrence and one division.
VpReal eval_forward(const CfStream& cf, std::int64_t k, const Context& ctx);

struct HybridRun {
  CfEstimate estimate;
  int work_bits = 0;
};

// Absolute error ≤ 2^(−n): estimate_k, then eval_backward with ⌈log2 k⌉ + 4
// guard bits. kmax as for estimate_k.
VpReal eval_hybrid(const CfStream& cf, int n, HybridRun* run = nullptr, std::int64_t kmax = 0);

// 1/(1 + 1/(1 + …)) = (√5 − 1)/2.
CfStream all_ones();
// A finite fraction; terms past the end have a = 0, b = 1.
CfStream from_terms(std::string label, std::vector<CfTerm> terms);

}  // namespace vp::contfrac
