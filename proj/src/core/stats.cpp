#include "vp/stats.hpp"

namespace vp {

OpCounters& counters() noexcept {
  thread_local OpCounters c;
  return c;
}

CounterScope::CounterScope() noexcept : start_(counters()), saved_peak_(counters().peak_live_values) {
  counters().peak_live_values = counters().live_values;
}

CounterScope::~CounterScope() {
  if (saved_peak_ > counters().peak_live_values) counters().peak_live_values = saved_peak_;
}

OpCounters CounterScope::delta() const noexcept {
  const OpCounters& now = counters();
  OpCounters d;
  d.add = now.add - start_.add;
  d.mul = now.mul - start_.mul;
  d.mul_small = now.mul_small - start_.mul_small;
  d.div_small = now.div_small - start_.div_small;
  d.div = now.div - start_.div;
  d.digit_ops = now.digit_ops - start_.digit_ops;
  d.live_values = now.live_values - start_.live_values;
  d.peak_live_values = now.peak_live_values - start_.live_values;
  d.underflow = now.underflow;
  return d;
}

std::int64_t CounterScope::peak_delta() const noexcept {
  return counters().peak_live_values - start_.live_values;
}

bool underflow_flag() noexcept { return counters().underflow; }
void clear_underflow_flag() noexcept { counters().underflow = false; }

}  // namespace vp
