#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace slimfat {

struct SketchParams {
  std::size_t d = 5;
  std::size_t w = 40000;
  // Counters per fat bucket (SF4/SFF) or fat expansion factor (SF3: w' = z*w).
  std::size_t z = 3;
  // Flat fat width for SF1/SF2. Unset means z*w.
  std::optional<std::size_t> w_prime;
  std::uint64_t master_seed = 0;

  std::size_t fat_width() const noexcept { return w_prime.value_or(z * w); }

  // Throws SketchError(kConfiguration) unless d, w, z >= 1 and w' >= w.
  void validate() const;

  // d = ceil(ln(1/delta)), w = ceil(e/epsilon); both bounds must lie in (0, 1).
  static SketchParams from_error_bounds(double epsilon, double delta, std::size_t z = 3,
                                        std::uint64_t seed = 0);
};

// Per-array count of counter increments; alpha = mean_i(increments[i]) / insertions.
struct IncrementTally {
  std::vector<std::uint64_t> increments;
  std::uint64_t insertions = 0;

  explicit IncrementTally(std::size_t d = 0) : increments(d, 0) {}
};

}  // namespace slimfat
