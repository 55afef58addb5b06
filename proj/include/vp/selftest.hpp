#pragma once

#include <string>
#include <vector>

namespace vp::selftest {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 means no limit
};

// The eleven acceptance criteria, in order. A criterion also fails when it
// overruns its time limit.
std::vector<CheckResult> acceptance_criteria();
CheckResult run_criterion(int id);
int criterion_count();

enum class Level { quick, full };

struct Options {
  Level level = Level::quick;
  bool inject_cache_fault = false;
  int bits = 256;
};

// Quick: structural examples plus a fixed set of cross-checks. Full adds the
// acceptance criteria. The cache is verified last, so an injected fault
// shows up as a failure naming the corrupted entry.
std::vector<CheckResult> run(const Options& options);

}  // namespace vp::selftest
