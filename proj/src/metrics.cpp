#include "slimfat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slimfat/error.hpp"

namespace slimfat {

double relative_error(std::uint64_t estimate, std::uint64_t true_freq) {
  if (true_freq == 0) {
    throw SketchError(ErrorKind::kUndefinedMetric, "relative error needs a positive true frequency");
  }
  const std::uint64_t diff = estimate > true_freq ? estimate - true_freq : true_freq - estimate;
  return static_cast<double>(diff) / static_cast<double>(true_freq);
}

std::vector<double> default_cdf_thresholds() {
  return {0.0001, 0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0,
          std::numeric_limits<double>::infinity()};
}

AccuracyReport accuracy_report(const QueryFn& query, const ExactOracle& oracle,
                               std::span<const double> extra_thresholds, Execution execution) {
  if (oracle.empty()) {
    throw SketchError(ErrorKind::kUndefinedMetric, "accuracy report over an empty oracle");
  }
  const auto items = oracle.distinct_items();
  const auto n = static_cast<std::int64_t>(items.size());

  AccuracyReport report;
  report.per_item.resize(items.size());
  auto evaluate = [&](std::int64_t k) {
    auto& row = report.per_item[k];
    row.key = items[k].first;
    row.true_freq = items[k].second;
    row.estimate = query(row.key);
    row.relative_error = relative_error(row.estimate, row.true_freq);
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) evaluate(k);
  } else {
    for (std::int64_t k = 0; k < n; ++k) evaluate(k);
  }

  // Reductions stay serial so both execution modes sum in the same order.
  double total = 0.0;
  std::size_t exact = 0;
  std::vector<double> sorted;
  sorted.reserve(items.size());
  for (const auto& row : report.per_item) {
    total += row.relative_error;
    if (row.estimate == row.true_freq) ++exact;
    sorted.push_back(row.relative_error);
  }
  report.are = total / static_cast<double>(n);
  report.correct_fraction = static_cast<double>(exact) / static_cast<double>(n);

  std::sort(sorted.begin(), sorted.end());
  auto thresholds = default_cdf_thresholds();
  thresholds.insert(thresholds.end(), extra_thresholds.begin(), extra_thresholds.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  for (double t : thresholds) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    report.cdf.push_back({t, static_cast<double>(below) / static_cast<double>(n)});
  }
  return report;
}

double correct_rate_bound(std::uint64_t v, std::uint64_t w, std::uint64_t d) {
  if (v == 0 || w == 0 || d == 0) {
    throw SketchError(ErrorKind::kConfiguration, "correct_rate_bound needs v, w, d >= 1");
  }
  // (1 - 1/w)^k = exp(k * log1p(-1/w)); 1 - (1 - p)^d = -expm1(d * log1p(-p)).
  const double log_miss = w == 1 ? -std::numeric_limits<double>::infinity()
                                 : std::log1p(-1.0 / static_cast<double>(w));
  double sum = 0.0;
  for (std::uint64_t l = 1; l <= v; ++l) {
    const std::uint64_t others = v - l;
    const double p_alone = others == 0 ? 1.0 : std::exp(static_cast<double>(others) * log_miss);
    const double term = p_alone >= 1.0
                            ? 1.0
                            : -std::expm1(static_cast<double>(d) * std::log1p(-p_alone));
    sum += term;
  }
  return std::clamp(sum / static_cast<double>(v), 0.0, 1.0);
}

double measure_alpha(const IncrementTally& tally) {
  if (tally.insertions == 0 || tally.increments.empty()) {
    throw SketchError(ErrorKind::kUndefinedMetric, "alpha needs at least one insertion");
  }
  double sum = 0.0;
  for (std::uint64_t inc : tally.increments) {
    sum += static_cast<double>(inc) / static_cast<double>(tally.insertions);
  }
  return sum / static_cast<double>(tally.increments.size());
}

double tail_violation_rate(const AccuracyReport& report, double epsilon, double alpha,
                           std::uint64_t n) {
  if (report.per_item.empty()) return 0.0;
  const double margin = epsilon * alpha * static_cast<double>(n);
  std::size_t violations = 0;
  for (const auto& row : report.per_item) {
    if (static_cast<double>(row.estimate) >= static_cast<double>(row.true_freq) + margin) {
      ++violations;
    }
  }
  return static_cast<double>(violations) / static_cast<double>(report.per_item.size());
}

}  // namespace slimfat
