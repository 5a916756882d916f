#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slimfat {

struct SelftestConfig {
  std::uint64_t seed = 1;
  // Negative control: run the bucket-max check against an SFF sketch whose
  // deletion skips the clamp. The check is expected to fail.
  bool corrupt_clamp = false;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant suite over small dimensions:
///   no-underestimation   SF2/SF3/SF4/SFF/CM never answer below the truth
///   bucket-max           SFF slim counters never exceed their fat bucket maximum
///   max-frequency        oracle-assisted slim counters equal the max true frequency
///   correct-rate-bound   oracle-assisted exact fraction >= analytic bound - 0.02
///   slim-roundtrip       export/import/re-export is byte-stable and answers agree
///   clamp-equivalence    clamp and changed-max deletion give identical counters
/// Output is a pure function of the config.
std::vector<PropertyResult> run_selftest(const SelftestConfig& config);

}  // namespace slimfat
