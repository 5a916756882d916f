#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slimfat {

// Exact multiset counter. The ground truth every error metric is computed against.
class ExactOracle {
 public:
  void insert(std::uint64_t key);
  // Throws kPhantomDeletion if the key's count is already 0.
  void remove(std::uint64_t key);
  std::uint64_t query(std::uint64_t key) const;

  // Keys with positive frequency, ascending by key.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> distinct_items() const;

  std::size_t distinct_count() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  std::uint64_t total_ops() const noexcept { return total_ops_; }
  // Inserts minus deletes.
  std::int64_t live_total() const noexcept { return live_total_; }

 private:
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::uint64_t total_ops_ = 0;
  std::int64_t live_total_ = 0;
};

}  // namespace slimfat
