#include "slimfat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include <fmt/format.h>

#include "slimfat/error.hpp"
#include "slimfat/kernels.hpp"

namespace slimfat {

void AccuracyBenchConfig::validate() const {
  if (sketches.empty()) throw SketchError(ErrorKind::kConfiguration, "no sketches configured");
  params.validate();
  workload.validate();
  for (std::size_t k = 1; k < checkpoints.size(); ++k) {
    if (checkpoints[k] <= checkpoints[k - 1]) {
      throw SketchError(ErrorKind::kConfiguration, "checkpoints must be strictly increasing");
    }
  }
}

std::vector<std::uint64_t> every_n_checkpoints(std::uint64_t step, std::uint64_t total) {
  if (step == 0) throw SketchError(ErrorKind::kConfiguration, "checkpoint step must be >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = step; c <= total; c += step) out.push_back(c);
  return out;
}

namespace {

struct Lane {
  AnySketch sketch;
  bool retired = false;
};

}  // namespace

AccuracyBenchResult run_accuracy_bench(const AccuracyBenchConfig& config) {
  config.validate();
  std::vector<Lane> lanes;
  lanes.reserve(config.sketches.size());
  for (SketchKind kind : config.sketches) {
    lanes.push_back({AnySketch(kind, config.params, config.cml_base)});
  }

  ExactOracle oracle;
  AccuracyBenchResult result;
  const bool reverse = config.workload.deletion_mode == DeletionMode::kReverseOrder;
  const bool mixed = config.workload.kind != WorkloadKind::kTrace &&
                     config.workload.deletion_mode == DeletionMode::kInterleaved;
  bool cdf_taken = false;

  auto capture_cdf = [&] {
    for (const auto& lane : lanes) {
      if (lane.retired) continue;
      const auto report = accuracy_report(
          [&](std::uint64_t k) { return lane.sketch.query(k); }, oracle, config.extra_thresholds);
      for (const auto& point : report.cdf) {
        result.cdf.push_back({std::string(to_string(lane.sketch.kind())), point.threshold,
                              point.fraction});
      }
    }
    cdf_taken = true;
  };

  Generator stream(config.workload);
  std::uint64_t done = 0;
  std::size_t next_checkpoint = 0;
  OpType last = OpType::kInsert;
  while (auto op = stream.next()) {
    if (op->op == OpType::kDelete) {
      if (reverse && !cdf_taken && !oracle.empty()) capture_cdf();
      oracle.remove(op->key);
      for (auto& lane : lanes) {
        if (lane.retired) continue;
        if (!lane.sketch.supports_deletion()) {
          lane.retired = true;
          continue;
        }
        lane.sketch.remove(op->key);
      }
    } else {
      oracle.insert(op->key);
      for (auto& lane : lanes) {
        if (!lane.retired) lane.sketch.insert(op->key);
      }
    }
    last = op->op;
    ++done;

    while (next_checkpoint < config.checkpoints.size() && config.checkpoints[next_checkpoint] < done) {
      ++next_checkpoint;
    }
    if (next_checkpoint < config.checkpoints.size() && config.checkpoints[next_checkpoint] == done) {
      ++next_checkpoint;
      if (oracle.empty()) continue;
      const char* phase = mixed ? "mixed" : (last == OpType::kInsert ? "insert" : "delete");
      for (const auto& lane : lanes) {
        if (lane.retired) continue;
        const auto report = accuracy_report(
            [&](std::uint64_t k) { return lane.sketch.query(k); }, oracle);
        result.rows.push_back({std::string(to_string(lane.sketch.kind())), phase, done,
                               oracle.live_total(), report.are, report.correct_fraction});
      }
    }
  }
  if (!cdf_taken && !oracle.empty()) capture_cdf();
  return result;
}

void write_accuracy_csv(std::ostream& out, const std::vector<AccuracyRow>& rows) {
  out << "sketch,phase,ops_done,are,correct_fraction\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{:.9g},{:.9g}\n", r.sketch, r.phase, r.ops_done, r.are,
                       r.correct_fraction);
  }
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfRow>& rows) {
  out << "sketch,re_threshold,cdf_fraction\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{:.9g},{:.9g}\n", r.sketch, r.threshold, r.fraction);
  }
}

// ---------------------------------------------------------------- speed

std::vector<SpeedRow> run_speed_bench(const SpeedBenchConfig& config) {
  if (config.sketches.empty()) throw SketchError(ErrorKind::kConfiguration, "no sketches configured");
  if (config.repetitions < 1) throw SketchError(ErrorKind::kConfiguration, "repetitions must be >= 1");
  for (int t : config.threads) {
    if (t < 1) throw SketchError(ErrorKind::kConfiguration, "thread counts must be >= 1");
  }
  config.params.validate();

  std::vector<std::uint64_t> keys;
  {
    Generator stream(config.workload);
    while (auto op = stream.next()) {
      if (op->op == OpType::kInsert) keys.push_back(op->key);
    }
  }
  if (keys.empty()) throw SketchError(ErrorKind::kConfiguration, "speed benchmark over zero operations");

  std::vector<std::uint64_t> query_keys;
  const std::uint64_t nq = config.query_ops == 0 ? keys.size() : config.query_ops;
  query_keys.reserve(nq);
  for (std::uint64_t k = 0; k < nq; ++k) query_keys.push_back(keys[k % keys.size()]);
  std::vector<std::uint64_t> answers(nq);

  using clock = std::chrono::steady_clock;
  auto rate = [](std::size_t ops, clock::duration elapsed) {
    const double secs = std::chrono::duration<double>(elapsed).count();
    return secs > 0.0 ? static_cast<double>(ops) / secs : 0.0;
  };

  std::vector<SpeedRow> rows;
  for (SketchKind kind : config.sketches) {
    const std::string name(to_string(kind));
    double best_insert = 0.0, best_delete = 0.0;
    std::vector<double> best_query(config.threads.size(), 0.0);
    bool deletes = false;
    for (int rep = 0; rep < config.repetitions; ++rep) {
      AnySketch sketch(kind, config.params, config.cml_base);
      auto t0 = clock::now();
      for (std::uint64_t key : keys) sketch.insert(key);
      best_insert = std::max(best_insert, rate(keys.size(), clock::now() - t0));

      for (std::size_t t = 0; t < config.threads.size(); ++t) {
        t0 = clock::now();
        batch_query_parallel(sketch, query_keys, answers, config.threads[t]);
        best_query[t] = std::max(best_query[t], rate(query_keys.size(), clock::now() - t0));
      }

      if (sketch.supports_deletion()) {
        deletes = true;
        t0 = clock::now();
        for (auto it = keys.rbegin(); it != keys.rend(); ++it) sketch.remove(*it);
        best_delete = std::max(best_delete, rate(keys.size(), clock::now() - t0));
      }
    }
    rows.push_back({name, "insert", 1, best_insert});
    for (std::size_t t = 0; t < config.threads.size(); ++t) {
      rows.push_back({name, "query", config.threads[t], best_query[t]});
    }
    if (deletes) rows.push_back({name, "delete", 1, best_delete});
  }
  return rows;
}

void write_speed_csv(std::ostream& out, const std::vector<SpeedRow>& rows) {
  out << "sketch,mode,threads,ops_per_sec\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{:.1f}\n", r.sketch, r.mode, r.threads, r.ops_per_sec);
  }
}

}  // namespace slimfat
