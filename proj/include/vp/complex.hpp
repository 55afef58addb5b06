#pragma once

#include <cstdint>

#include "vp/real.hpp"

namespace vp {

struct VpComplex {
  VpReal re;
  VpReal im;
};

VpComplex add(const VpComplex& z, const VpComplex& w, const Context& ctx);
VpComplex sub(const VpComplex& z, const VpComplex& w, const Context& ctx);
// Four real multiplies.
VpComplex mul(const VpComplex& z, const VpComplex& w, const Context& ctx);
VpComplex mul(const VpComplex& z, const VpReal& r, const Context& ctx);
VpComplex div(const VpComplex& z, const VpComplex& w, const Context& ctx);
VpComplex conj(const VpComplex& z);
VpReal norm2(const VpComplex& z, const Context& ctx);
VpReal abs(const VpComplex& z, const Context& ctx);
VpComplex pow_int(const VpComplex& z, std::int64_t k, const Context& ctx);
VpComplex round(const VpComplex& z, const Context& ctx);

}  // namespace vp
