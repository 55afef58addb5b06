#include <cstdio>

#include "vp/selftest.hpp"

// One line per acceptance criterion; exit status 1 if any fails.
int main() {
  int failed = 0;
  const int count = vp::selftest::criterion_count();
  for (int id = 1; id <= count; ++id) {
    vp::selftest::CheckResult r = vp::selftest::run_criterion(id);
    if (!r.pass) ++failed;
    std::printf("criterion %2d %s: %s [%.3f s / %.0f s] %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.limit_seconds, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", count - failed, count);
  return failed == 0 ? 0 : 1;
}
