#pragma once

#include <cstdint>

namespace vp {

// Per-thread operation counters. Every core-arith entry point bumps its
// counter; digit_ops approximates limb-level work (a·b limb products for a
// multiply, limb count for linear ops).
struct OpCounters {
  std::uint64_t add = 0;
  std::uint64_t mul = 0;
  std::uint64_t mul_small = 0;
  std::uint64_t div_small = 0;
  std::uint64_t div = 0;
  std::uint64_t digit_ops = 0;
  std::int64_t live_values = 0;
  std::int64_t peak_live_values = 0;
  bool underflow = false;
};

OpCounters& counters() noexcept;

// Snapshot helper: delta() reports work done since construction. Peak live
// count is reset to the current live count so peak_delta() measures the
// scope alone.
class CounterScope {
 public:
  CounterScope() noexcept;
  ~CounterScope();
  CounterScope(const CounterScope&) = delete;
  CounterScope& operator=(const CounterScope&) = delete;
  OpCounters delta() const noexcept;
  // Highest number of simultaneously live values above the baseline.
  std::int64_t peak_delta() const noexcept;

 private:
  OpCounters start_;
  std::int64_t saved_peak_;
};

bool underflow_flag() noexcept;
void clear_underflow_flag() noexcept;

}  // namespace vp
