#pragma once

#include <cstdint>
#include <vector>

#include "slimfat/counter_grid.hpp"
#include "slimfat/hashing.hpp"
#include "slimfat/sketch_params.hpp"
#include "slimfat/slim_format.hpp"

// Comparison sketches. All share the slim subsketch's bucket hashes h_i, so a
// CM sketch and an SF sketch built from the same SketchParams index the same
// buckets for every key.
//
// Writers need exclusive access; const member functions are safe to call
// concurrently once updates have stopped.
namespace slimfat {

/// Count-Min: d arrays of w counters, point query = min of the d hashed counters.
class CmSketch {
 public:
  explicit CmSketch(const SketchParams& params);

  // Throws kCounterOverflow if a hashed counter is saturated.
  void insert(std::uint64_t key);
  // Throws kPhantomDeletion (and leaves the sketch untouched) if any hashed
  // counter is already 0.
  void remove(std::uint64_t key);
  std::uint64_t query(std::uint64_t key) const;

  static constexpr bool supports_deletion() noexcept { return true; }

  const SketchParams& params() const noexcept { return params_; }
  const HashFamily& hashes() const noexcept { return hashes_; }
  const Grid<std::uint32_t>& counters() const noexcept { return counters_; }
  const IncrementTally& tally() const noexcept { return tally_; }
  std::uint64_t total_insertions() const noexcept { return tally_.insertions; }
  std::uint64_t total_deletions() const noexcept { return deletions_; }

  SketchImage image() const;

 private:
  SketchParams params_;
  HashFamily hashes_;
  Grid<std::uint32_t> counters_;
  IncrementTally tally_;
  std::uint64_t deletions_ = 0;
};

/// Count sketch: signed counters, each update weighted by a +-1 sign hash;
/// query = median over arrays of sign * counter, clamped at 0.
class CountSketch {
 public:
  explicit CountSketch(const SketchParams& params);

  void insert(std::uint64_t key);
  void remove(std::uint64_t key);
  std::uint64_t query(std::uint64_t key) const;

  static constexpr bool supports_deletion() noexcept { return true; }

  const SketchParams& params() const noexcept { return params_; }
  const Grid<std::int32_t>& counters() const noexcept { return counters_; }
  const IncrementTally& tally() const noexcept { return tally_; }

  SketchImage image() const;

 private:
  void update(std::uint64_t key, int direction);

  SketchParams params_;
  HashFamily hashes_;
  Grid<std::int32_t> counters_;
  IncrementTally tally_;
};

// Median of signed estimates. Even counts average the two central values,
// rounding half away from zero. Negative medians clamp to 0.
std::uint64_t clamped_median(std::vector<std::int64_t> values);

/// Conservative update: only the hashed counters equal to the current minimum
/// are incremented. No deletions.
class CuSketch {
 public:
  explicit CuSketch(const SketchParams& params);

  void insert(std::uint64_t key);
  // Always throws kUnsupportedOperation.
  void remove(std::uint64_t key);
  std::uint64_t query(std::uint64_t key) const;

  static constexpr bool supports_deletion() noexcept { return false; }

  const SketchParams& params() const noexcept { return params_; }
  const Grid<std::uint32_t>& counters() const noexcept { return counters_; }
  const IncrementTally& tally() const noexcept { return tally_; }

  SketchImage image() const;

 private:
  SketchParams params_;
  HashFamily hashes_;
  Grid<std::uint32_t> counters_;
  IncrementTally tally_;
};

inline constexpr double kDefaultCmlBase = 1.08;

// Estimated count represented by a base-b approximate counter with exponent c:
// (b^c - 1) / (b - 1).
double cml_value(std::uint32_t exponent, double base);

/// Count-Min-Log with conservative update over base-b approximate counters.
///
/// On insert, let c be the minimum exponent over the hashed cells. With
/// probability b^-c every hashed cell whose exponent equals c is bumped. The
/// coin flips come from a splitmix64 stream seeded with rng_seed, one draw
/// per insertion, so a replayed stream reproduces the same state.
class CmlSketch {
 public:
  CmlSketch(const SketchParams& params, double base = kDefaultCmlBase);
  CmlSketch(const SketchParams& params, double base, std::uint64_t rng_seed);

  void insert(std::uint64_t key);
  // Always throws kUnsupportedOperation.
  void remove(std::uint64_t key);
  // cml_value of the minimum hashed exponent, rounded to nearest.
  std::uint64_t query(std::uint64_t key) const;

  static constexpr bool supports_deletion() noexcept { return false; }

  const SketchParams& params() const noexcept { return params_; }
  double base() const noexcept { return base_; }
  const Grid<std::uint16_t>& exponents() const noexcept { return exponents_; }
  const IncrementTally& tally() const noexcept { return tally_; }

  SketchImage image() const;

 private:
  SketchParams params_;
  double base_;
  HashFamily hashes_;
  Grid<std::uint16_t> exponents_;
  SplitMix64 rng_;
  IncrementTally tally_;
  std::vector<std::size_t> scratch_;
};

}  // namespace slimfat
