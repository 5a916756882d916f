#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace slimfat {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixC1 = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMixC2 = 0x94D049BB133111EBULL;
inline constexpr std::uint64_t kSignSalt = 0xA5A5A5A5A5A5A5A5ULL;

// splitmix64 avalanche step. These constants are part of the slim export
// format: a collector recomputes every bucket from the master seed alone.
constexpr std::uint64_t finalize64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= kMixC1;
  x ^= x >> 27;
  x *= kMixC2;
  x ^= x >> 31;
  return x;
}

// FNV-1a over raw bytes, then finalized; maps string items into the key domain.
std::uint64_t key_from_bytes(std::string_view bytes) noexcept;

/// Seeded hash functions for a sketch with `d` arrays.
///
/// Three seed streams are derived from one master seed:
///   [0, d)    bucket hashes h_i (slim, CM-style arrays, SF3/SF4/SFF fat buckets)
///   [d, 2d)   slot hashes f_i (counter inside a bucketed fat bucket)
///   [2d, 3d)  fat hashes g_i for the flat fat subsketch of SF1/SF2
/// Seed k is finalize64(master + (k+1) * golden), so the family is a pure
/// function of (master_seed, d) and all 3d seeds are pairwise distinct.
class HashFamily {
 public:
  HashFamily(std::uint64_t master_seed, std::size_t d);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::size_t depth() const noexcept { return depth_; }

  std::uint64_t array_seed(std::size_t i) const noexcept { return seeds_[i]; }
  std::uint64_t slot_seed(std::size_t i) const noexcept { return seeds_[depth_ + i]; }
  std::uint64_t fat_seed(std::size_t i) const noexcept { return seeds_[2 * depth_ + i]; }

  // The first d entries: one seed per array.
  std::vector<std::uint64_t> per_array_seeds() const;

  std::size_t bucket(std::size_t i, std::uint64_t item, std::size_t range) const noexcept {
    return static_cast<std::size_t>(finalize64(item ^ array_seed(i)) % range);
  }
  std::size_t slot(std::size_t i, std::uint64_t item, std::size_t z) const noexcept {
    return static_cast<std::size_t>(finalize64(item ^ slot_seed(i)) % z);
  }
  std::size_t fat_bucket(std::size_t i, std::uint64_t item, std::size_t range) const noexcept {
    return static_cast<std::size_t>(finalize64(item ^ fat_seed(i)) % range);
  }
  int sign(std::size_t i, std::uint64_t item) const noexcept {
    return (finalize64(item ^ array_seed(i) ^ kSignSalt) & 1U) == 0 ? 1 : -1;
  }

 private:
  std::uint64_t master_seed_;
  std::size_t depth_;
  std::vector<std::uint64_t> seeds_;
};

// Checked free-function forms. They validate indices and ranges and throw
// SketchError(kConfiguration) on misuse; the member functions above do not.
HashFamily derive_seeds(std::uint64_t master_seed, std::size_t d);
std::size_t bucket_hash(const HashFamily& family, std::size_t i, std::uint64_t item,
                        std::size_t range);
std::size_t slot_hash(const HashFamily& family, std::size_t i, std::uint64_t item,
                      std::size_t z);
int sign_hash(const HashFamily& family, std::size_t i, std::uint64_t item);

// 0-based form of the 1-based fold h = (g - 1) % w + 1: fat index g in
// [0, z*w) maps to slim index g % w, so slim bucket j owns fat buckets
// j, j + w, ..., j + (z-1)w.
constexpr std::size_t fold_to_slim(std::size_t g, std::size_t w) noexcept { return g % w; }

// Sequential splitmix64 generator. All harness randomness comes from here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kGolden;
    return finalize64(state_);
  }
  // Uniform in [0, 1) with 53 bits of precision.
  double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) noexcept { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace slimfat
