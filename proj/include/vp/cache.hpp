#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vp/real.hpp"

namespace vp {

// Process-wide memo of constants and tables keyed by name. Readers share the
// lock; a missing or too-short entry is computed outside the lock and
// published only if it improves on what is stored, so precision never goes
// down. A request for fewer bits than cached gets the cached value truncated,
// which can differ from a direct rounding by one unit in the last place.
class ConstantCache {
 public:
  using ValueFn = std::function<VpReal(int bits)>;
  using TableFn = std::function<std::vector<VpReal>(int size)>;

  static ConstantCache& global();

  VpReal constant(const std::string& name, int bits, const ValueFn& compute);
  // Returns a table with at least min_size entries.
  std::vector<VpReal> table(const std::string& key, int min_size, const TableFn& compute);

  // One diagnostic line per entry whose contents no longer match the checksum
  // recorded at publication.
  std::vector<std::string> verify() const;
  bool corrupt_for_testing(const std::string& name);
  void clear();
  std::vector<std::string> entries() const;
  int cached_bits(const std::string& name) const;

 private:
  struct Entry {
    int bits = 0;
    std::vector<VpReal> values;
    std::uint64_t checksum = 0;
  };
  static std::uint64_t checksum(const std::vector<VpReal>& values);

  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> entries_;
};

}  // namespace vp
