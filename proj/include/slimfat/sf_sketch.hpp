#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "slimfat/counter_grid.hpp"
#include "slimfat/hashing.hpp"
#include "slimfat/sketch_params.hpp"
#include "slimfat/slim_format.hpp"

namespace slimfat {

enum class SfVariant : std::uint8_t {
  kSf1 = 1,  // flat fat, insert only
  kSf2 = 2,  // flat fat + deletion subsketch
  kSf3 = 3,  // flat fat of width z*w folded onto the slim buckets
  kSf4 = 4,  // bucketed fat, sum-gated deletion
  kSff = 6,  // bucketed fat, slim clamped to the bucket maximum on deletion
};

std::string_view to_string(SfVariant variant) noexcept;

// The d x w counter matrix that answers queries and is exported.
struct SlimSubsketch {
  Grid<std::uint32_t> counters;
  // Slim counter increments per array; tally.insertions counts sf inserts.
  IncrementTally tally;

  std::uint64_t insertions_seen() const noexcept { return tally.insertions; }
};

// SF1/SF2: a plain d x w' CM sketch. SF3: d x (z*w), where slim bucket j owns
// fat buckets j, j+w, ..., j+(z-1)w.
struct FatSubsketchFlat {
  Grid<std::uint32_t> counters;
};

// SF4/SFF: d x w buckets of z counters each, contiguous per bucket.
struct FatSubsketchBucketed {
  std::size_t w = 0;
  std::size_t z = 0;
  std::vector<std::uint32_t> counters;

  std::span<const std::uint32_t> bucket(std::size_t i, std::size_t j) const noexcept {
    return {counters.data() + (i * w + j) * z, z};
  }
  std::uint32_t bucket_max(std::size_t i, std::size_t j) const noexcept;
  std::uint64_t bucket_sum(std::size_t i, std::size_t j) const noexcept;
};

// SF2 only: a CM sketch sharing the slim's d, w and bucket hashes.
struct DeletionSubsketch {
  Grid<std::uint32_t> counters;
};

// What an insert of `key` would observe in the fat subsketch (read-only probe).
struct FatObservation {
  // Minimum over the d fat counters the key maps to.
  std::uint32_t b_min = 0;
  // Per-array maximum over the key's fat bucket (bucketed variants only).
  std::vector<std::uint32_t> b_max_per_array;
};

// How SFF updates the slim subsketch on deletion. Both real rules are
// equivalent while every slim counter is at most its bucket maximum.
enum class SffDeletionRule {
  kClamp,              // A <- min(A, max_k B)
  kChangedMaxTrigger,  // clamp only when the deletion changed max_k B
  kSkipClampForTesting,  // broken on purpose; negative control for selftest
};

/// One Slim-Fat sketch of the given variant.
///
/// Inserts go to the fat subsketch first; the minimum of the d fat counters
/// just touched (b_min) gates the slim update, which bumps only the minimal
/// slim counters and only while they are below b_min. Queries read the slim
/// subsketch alone. Deletions decrement the fat side and then lower slim
/// counters only as far as the variant's upper bound allows, so estimates
/// never fall below the true count.
class SfSketch {
 public:
  SfSketch(SfVariant variant, const SketchParams& params,
           SffDeletionRule deletion_rule = SffDeletionRule::kClamp);

  // Throws kCounterOverflow with no state change if a fat counter is saturated.
  void insert(std::uint64_t key);
  // Throws kUnsupportedOperation for SF1 and kPhantomDeletion (no state change)
  // when a fat or deletion-subsketch counter on the key's path is already 0.
  void remove(std::uint64_t key);
  std::uint64_t query(std::uint64_t key) const;

  // Test mode: the fat phase runs as usual but the slim gate is the key's
  // exact post-insert frequency instead of b_min.
  void oracle_assisted_insert(std::uint64_t key, std::uint64_t true_freq);

  FatObservation observe_fat(std::uint64_t key) const;

  SketchImage slim_image() const;
  std::vector<std::uint8_t> export_slim() const { return encode_image(slim_image()); }

  bool supports_deletion() const noexcept { return variant_ != SfVariant::kSf1; }
  SfVariant variant() const noexcept { return variant_; }
  const SketchParams& params() const noexcept { return params_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  const SlimSubsketch& slim() const noexcept { return slim_; }
  // Non-null for SF1/SF2/SF3.
  const FatSubsketchFlat* flat_fat() const noexcept;
  // Non-null for SF4/SFF.
  const FatSubsketchBucketed* bucketed_fat() const noexcept;
  // Non-null for SF2.
  const DeletionSubsketch* deletion_subsketch() const noexcept;

  // Slim bucket of `key` in array i (same as the CM bucket hash for every variant).
  std::size_t slim_bucket(std::size_t i, std::uint64_t key) const noexcept;

 private:
  bool bucketed() const noexcept {
    return variant_ == SfVariant::kSf4 || variant_ == SfVariant::kSff;
  }
  void compute_indices(std::uint64_t key, std::span<std::size_t> slim_idx,
                       std::span<std::size_t> fat_idx) const noexcept;
  void locate(std::uint64_t key);
  std::uint32_t& fat_at(std::size_t flat_index) noexcept;
  std::uint32_t fat_value(std::size_t flat_index) const noexcept;
  void fat_phase();
  void slim_phase(std::uint64_t gate);

  SfVariant variant_;
  SketchParams params_;
  SffDeletionRule deletion_rule_;
  HashFamily hashes_;
  SlimSubsketch slim_;
  FatSubsketchFlat flat_;
  FatSubsketchBucketed bucketed_;
  std::optional<DeletionSubsketch> deletion_;

  // Per-array slim bucket and fat cell of the key being updated.
  std::vector<std::size_t> slim_idx_;
  std::vector<std::size_t> fat_idx_;
  std::vector<std::uint32_t> old_max_;
};

}  // namespace slimfat
