#pragma once

#include <cstdint>
#include <vector>

#include "vp/real.hpp"

namespace vp::newton {

// Ascending precisions for a precision-doubling Newton iteration.
struct DoublingSchedule {
  int seed_precision = 48;
  std::vector<int> stage_precisions;

  // Each stage is at most ⌈previous·2⌉ + slack bits. The last stage is ≥ target.
  static DoublingSchedule make(int target_bits, int seed_bits = 48, int slack = 4);
};

struct NewtonStage {
  int precision_bits = 0;
  std::uint64_t digit_ops = 0;
};

struct NewtonTrace {
  std::vector<NewtonStage> stages;
  std::uint64_t total_digit_ops = 0;
};

// y^(−1/m) to relative precision 2^(−n). Uses only multiplies and small-integer
// divisions.
VpReal inv_root(const VpReal& y, std::int64_t m, int n, NewtonTrace* trace = nullptr);

// Runs `iterations` Newton steps for y^(−1/m) at a fixed precision p from x0 and
// returns log2 |x^m·y − 1| before the first step and after every step.
std::vector<double> inv_root_fixed_precision(const VpReal& y, std::int64_t m, const VpReal& x0,
                                             int p, int iterations);

VpReal sqrt(const VpReal& y, int n);

// Natural logarithm by Newton iteration on exp.
VpReal ln(const VpReal& y, int n, NewtonTrace* trace = nullptr);

// ln 2 computed as −ln(½) and memoized.
VpReal ln2(int n);

}  // namespace vp::newton
