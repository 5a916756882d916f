#include "slimfat/oracle.hpp"

#include <algorithm>
#include <string>

#include "slimfat/error.hpp"

namespace slimfat {

void ExactOracle::insert(std::uint64_t key) {
  ++counts_[key];
  ++total_ops_;
  ++live_total_;
}

void ExactOracle::remove(std::uint64_t key) {
  auto it = counts_.find(key);
  if (it == counts_.end() || it->second <= 0) {
    throw SketchError(ErrorKind::kPhantomDeletion,
                      "oracle: delete of absent key " + std::to_string(key));
  }
  if (--it->second == 0) counts_.erase(it);
  ++total_ops_;
  --live_total_;
}

std::uint64_t ExactOracle::query(std::uint64_t key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : static_cast<std::uint64_t>(it->second);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> ExactOracle::distinct_items() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> items;
  items.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    items.emplace_back(key, static_cast<std::uint64_t>(count));
  }
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace slimfat
