#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slimfat/any_sketch.hpp"
#include "slimfat/metrics.hpp"
#include "slimfat/workloads.hpp"

namespace slimfat {

struct AccuracyBenchConfig {
  std::vector<SketchKind> sketches;
  SketchParams params;
  WorkloadSpec workload;
  // Op counts (ops processed so far) at which ARE is snapshotted. Strictly increasing.
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> extra_thresholds;
  double cml_base = kDefaultCmlBase;

  void validate() const;
};

struct AccuracyRow {
  std::string sketch;
  std::string phase;  // insert | delete | mixed
  std::uint64_t ops_done = 0;
  std::int64_t live_items = 0;  // inserts minus deletes; not part of the CSV
  double are = 0.0;
  double correct_fraction = 0.0;
};

struct CdfRow {
  std::string sketch;
  double threshold = 0.0;
  double fraction = 0.0;
};

struct AccuracyBenchResult {
  std::vector<AccuracyRow> rows;
  std::vector<CdfRow> cdf;
};

/// Feeds one generated stream to every configured sketch in lockstep.
///
/// Sketches that cannot delete are retired at the first deletion. A checkpoint
/// is skipped while the stream has no live items. The CDF is captured just
/// before the first deletion of a reverse-order workload (the insertion peak)
/// and at the end of the stream otherwise.
AccuracyBenchResult run_accuracy_bench(const AccuracyBenchConfig& config);

// step, 2*step, ... up to and including `total` when it is a multiple.
std::vector<std::uint64_t> every_n_checkpoints(std::uint64_t step, std::uint64_t total);

// Header "sketch,phase,ops_done,are,correct_fraction".
void write_accuracy_csv(std::ostream& out, const std::vector<AccuracyRow>& rows);
// Header "sketch,re_threshold,cdf_fraction".
void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows);

struct SpeedBenchConfig {
  std::vector<SketchKind> sketches;
  SketchParams params;
  // Only the insert keys of this stream are used.
  WorkloadSpec workload;
  std::vector<int> threads{1};
  // Queries per measurement; 0 means one per streamed key.
  std::uint64_t query_ops = 0;
  int repetitions = 3;
  double cml_base = kDefaultCmlBase;
};

struct SpeedRow {
  std::string sketch;
  std::string mode;  // insert | delete | query
  int threads = 1;
  double ops_per_sec = 0.0;
};

/// Update throughput with a single writer, then query throughput over the
/// filled sketch for each thread count, then (where supported) deletion of the
/// same keys in reverse. Each figure is the best of `repetitions` runs.
/// Throws kConfiguration if the stream yields no inserts.
std::vector<SpeedRow> run_speed_bench(const SpeedBenchConfig& config);

// Header "sketch,mode,threads,ops_per_sec".
void write_speed_csv(std::ostream& out, const std::vector<SpeedRow>& rows);

}  // namespace slimfat
