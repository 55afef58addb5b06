#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kDomain = 2;
inline constexpr int kRegime = 3;

// Runs one command. args excludes the program name. Results go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Decimal digits printed for an n-bit result: ⌈n·log10 2⌉ + 2.
int display_digits(int bits);
// Bits requested by --digits D: ⌈D/log10 2⌉.
int bits_for_digits(int digits);

}  // namespace vp::cli
