#include "vp/cache.hpp"

#include <algorithm>
#include <mutex>

namespace vp {

ConstantCache& ConstantCache::global() {
  static ConstantCache cache;
  return cache;
}

std::uint64_t ConstantCache::checksum(const std::vector<VpReal>& values) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const VpReal& v : values) {
    mix(static_cast<std::uint64_t>(v.sign()));
    mix(static_cast<std::uint64_t>(v.exponent()));
    for (Limb d : v.digits()) mix(d);
  }
  return h;
}

VpReal ConstantCache::constant(const std::string& name, int bits, const ValueFn& compute) {
  const Context ctx = Context::for_bits(bits);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(name);
    if (it != entries_.end() && it->second.bits >= bits) return truncate(it->second.values[0], ctx);
  }
  VpReal v = compute(bits);
  {
    std::unique_lock lock(mutex_);
    Entry& e = entries_[name];
    if (e.bits < bits) {
      e.bits = bits;
      e.values = {v};
      e.checksum = checksum(e.values);
    }
  }
  return truncate(v, ctx);
}

std::vector<VpReal> ConstantCache::table(const std::string& key, int min_size, const TableFn& compute) {
  int have = 0;
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      have = static_cast<int>(it->second.values.size());
      if (have >= min_size) return it->second.values;
    }
  }
  int size = std::max(min_size, 2 * have);
  std::vector<VpReal> values = compute(size);
  {
    std::unique_lock lock(mutex_);
    Entry& e = entries_[key];
    if (e.values.size() < values.size()) {
      e.bits = static_cast<int>(values.size());
      e.values = values;
      e.checksum = checksum(e.values);
    }
  }
  return values;
}

std::vector<std::string> ConstantCache::verify() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, e] : entries_) {
    if (checksum(e.values) != e.checksum) {
      out.push_back("cache entry '" + name + "' failed checksum verification");
    }
  }
  return out;
}

bool ConstantCache::corrupt_for_testing(const std::string& name) {
  std::unique_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end() || it->second.values.empty()) return false;
  VpReal& v = it->second.values[0];
  std::vector<Limb> d = v.digits();
  if (d.empty()) d.push_back(1);
  d.back() ^= 1u;
  if (d.back() == 0) d.back() = 3;
  v = VpReal::from_parts(v.sign() == 0 ? 1 : v.sign(), v.exponent(), std::move(d));
  return true;
}

void ConstantCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

std::vector<std::string> ConstantCache::entries() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& kv : entries_) out.push_back(kv.first);
  return out;
}

int ConstantCache::cached_bits(const std::string& name) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(name);
  return it == entries_.end() ? 0 : it->second.bits;
}

}  // namespace vp
