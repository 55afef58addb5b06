#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vp {

// Metadata an evaluator reports about how it produced a value.
struct RunInfo {
  std::string method;
  std::int64_t terms = 0;
  int work_bits = 0;
  std::vector<std::pair<std::string, std::string>> details;

  void note(const std::string& key, const std::string& value) { details.emplace_back(key, value); }
};

}  // namespace vp
