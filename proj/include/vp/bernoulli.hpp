#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vp/complex.hpp"
#include "vp/real.hpp"

namespace vp::bernoulli {

// Scaled Bernoulli numbers C_k = B_{2k}/(2k)!, defined by
// Σ C_k x^{2k} = x/(e^x − 1) + x/2.

enum class Method { stable, contour, unstable };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct BernoulliTable {
  int precision_bits = 0;
  Method method = Method::stable;
  std::vector<VpReal> scaled;  // C_k at index k−1

  const VpReal& c(int k) const { return scaled.at(static_cast<std::size_t>(k - 1)); }
};

// Forward solve of Σ_{i=0}^{k−1} C_{k−i}/(2i+1)! = (k−½)/(2k+1)! at exactly n
// bits. Relative error grows like 4^k·2^(−n).
BernoulliTable unstable(int kmax, int n);
// The same recurrence from a caller-supplied C_1, for perturbation studies.
std::vector<VpReal> unstable_from(const VpReal& c1, int kmax, const Context& ctx);

// Forward solve of C_k = 2k/((2k+1)!·4^k) − Σ_{i=1}^{k−1} C_{k−i}/((2i+1)!·4^i).
// Relative error O(k²·2^(−n)).
BernoulliTable stable(int kmax, int n);

// Stable table through the process-wide cache.
std::vector<VpReal> stable_cached(int kmax, int n);

// Number of points on the unit circle: 4·⌈(n·ln 2/ln 2π + 8)/4⌉.
int contour_points(int n);
// C_1..C_jmax from the trapezoidal sums for the Cauchy integral of
// f(z) = z/(e^z − 1) + z/2 on k points, using the k/4 + 1 points that
// symmetry and conjugacy leave. Relative error O((2π)^(−k)).
BernoulliTable contour(int jmax, int n);
BernoulliTable contour_with_points(int jmax, int k, int n);

VpComplex generating_function(const VpComplex& z, int n);

// B_{2k} = C_k·(2k)!, with the factorial exact and one rounding.
VpReal b2k_from_scaled(const VpReal& c, int k, int n);

}  // namespace vp::bernoulli
