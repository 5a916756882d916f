#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "slimfat/oracle.hpp"
#include "slimfat/sketch_params.hpp"

namespace slimfat {

// |estimate - true_freq| / true_freq. Throws kUndefinedMetric for true_freq == 0.
double relative_error(std::uint64_t estimate, std::uint64_t true_freq);

struct ItemError {
  std::uint64_t key = 0;
  std::uint64_t true_freq = 0;
  std::uint64_t estimate = 0;
  double relative_error = 0.0;
};

struct CdfPoint {
  double threshold = 0.0;
  // Fraction of items whose relative error is strictly below threshold.
  double fraction = 0.0;
};

struct AccuracyReport {
  std::vector<ItemError> per_item;  // ascending by key
  double are = 0.0;
  // Items answered exactly (relative error 0).
  double correct_fraction = 0.0;
  std::vector<CdfPoint> cdf;  // ascending thresholds, last one +inf
};

// Thresholds every report includes.
std::vector<double> default_cdf_thresholds();

using QueryFn = std::function<std::uint64_t(std::uint64_t)>;

enum class Execution { kSerial, kParallel };

/// Evaluates `query` once for every distinct item of `oracle`.
///
/// kParallel splits the items over OpenMP threads, so `query` must be safe to
/// call concurrently (true for const queries on a quiesced sketch). Both modes
/// produce identical reports. Throws kUndefinedMetric on an empty oracle.
AccuracyReport accuracy_report(const QueryFn& query, const ExactOracle& oracle,
                               std::span<const double> extra_thresholds = {},
                               Execution execution = Execution::kParallel);

// Lower bound on the expected fraction of exactly-answered items for v
// distinct items in a d x w slim subsketch backed by an exact fat:
//   (1/v) * sum_{l=1..v} [1 - (1 - (1 - 1/w)^(v-l))^d]
double correct_rate_bound(std::uint64_t v, std::uint64_t w, std::uint64_t d);

// Mean over arrays of increments / insertions. Throws kUndefinedMetric with
// no insertions.
double measure_alpha(const IncrementTally& tally);

// Fraction of items with estimate >= true_freq + epsilon * alpha * n.
double tail_violation_rate(const AccuracyReport& report, double epsilon, double alpha,
                           std::uint64_t n);

}  // namespace slimfat
