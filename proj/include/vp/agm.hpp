#pragma once

#include <vector>

#include "vp/real.hpp"

namespace vp::agm {

struct AgmTrace {
  int iterations = 0;
  int work_bits = 0;
  // ε_j = 1 − b_j/a_j before iteration j.
  std::vector<VpReal> eps;
  std::vector<double> eps_log2;
  VpReal final_gap;
};

// Arithmetic-geometric mean at fixed working precision n + ⌈log2 n⌉ + 6.
VpReal agm(const VpReal& a0, const VpReal& b0, int n, AgmTrace* trace = nullptr);

// Complete elliptic integral of the first kind with b0 = cos φ.
VpReal elliptic_k(const VpReal& b0, int n, AgmTrace* trace = nullptr);

struct PiTrace {
  int iterations = 0;
  int predicted_iterations = 0;
  int work_bits = 0;
  std::vector<double> gap_log2;
  std::vector<VpReal> t_values;
  // Every operation ran at work_bits.
  bool fixed_precision = true;
};

int pi_work_bits(int n);
int predicted_pi_iterations(int n);

// Quadratically convergent AGM algorithm for π.
VpReal compute_pi(int n, PiTrace* trace = nullptr);
// a²/t after exactly k iterations of the same loop, at precision n.
VpReal pi_after_iterations(int k, int n);
// Memoized π.
VpReal pi(int n);

}  // namespace vp::agm
