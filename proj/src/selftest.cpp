#include "slimfat/selftest.hpp"

#include <fmt/format.h>

#include "slimfat/any_sketch.hpp"
#include "slimfat/collector.hpp"
#include "slimfat/error.hpp"
#include "slimfat/metrics.hpp"

namespace slimfat {

namespace {

std::vector<Operation> mixed_stream(std::uint64_t seed, std::uint64_t v, std::uint64_t ops,
                                    double p) {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::kUniform;
  spec.distinct_items = v;
  spec.total_ops = ops;
  spec.seed = seed;
  spec.deletion_mode = DeletionMode::kInterleaved;
  spec.delete_probability = p;
  return materialize(spec);
}

std::vector<Operation> insert_stream(std::uint64_t seed, std::uint64_t v, std::uint64_t ops) {
  WorkloadSpec spec;
  spec.distinct_items = v;
  spec.total_ops = ops;
  spec.seed = seed;
  return materialize(spec);
}

SketchParams small_params(std::size_t d, std::size_t w, std::size_t z, std::uint64_t seed) {
  SketchParams p;
  p.d = d;
  p.w = w;
  p.z = z;
  p.master_seed = seed;
  return p;
}

PropertyResult no_underestimation(std::uint64_t seed) {
  const auto ops = mixed_stream(seed, 500, 20'000, 0.3);
  const auto params = small_params(3, 64, 3, seed ^ 0x51);
  std::uint64_t violations = 0;
  for (SketchKind kind : {SketchKind::kSf2, SketchKind::kSf3, SketchKind::kSf4,
                          SketchKind::kSff, SketchKind::kCm}) {
    AnySketch sketch(kind, params);
    ExactOracle oracle;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      sketch.apply(ops[k]);
      ops[k].op == OpType::kInsert ? oracle.insert(ops[k].key) : oracle.remove(ops[k].key);
      if ((k + 1) % 1000 == 0 || k + 1 == ops.size()) {
        for (const auto& [key, f] : oracle.distinct_items()) {
          if (sketch.query(key) < f) ++violations;
        }
      }
    }
  }
  return {"no-underestimation", violations == 0, fmt::format("{} violations", violations)};
}

PropertyResult bucket_max(std::uint64_t seed, bool corrupt) {
  const auto ops = mixed_stream(seed, 200, 10'000, 0.3);
  SfSketch sketch(SfVariant::kSff, small_params(3, 8, 4, seed ^ 0x52),
                  corrupt ? SffDeletionRule::kSkipClampForTesting : SffDeletionRule::kClamp);
  std::uint64_t violations = 0;
  for (const auto& op : ops) {
    op.op == OpType::kInsert ? sketch.insert(op.key) : sketch.remove(op.key);
    const auto& fat = *sketch.bucketed_fat();
    const auto& slim = sketch.slim().counters;
    for (std::size_t i = 0; i < slim.rows(); ++i) {
      for (std::size_t j = 0; j < slim.cols(); ++j) {
        if (slim.at(i, j) > fat.bucket_max(i, j)) ++violations;
      }
    }
  }
  return {"bucket-max", violations == 0, fmt::format("{} violations", violations)};
}

PropertyResult max_frequency(std::uint64_t seed) {
  const auto ops = insert_stream(seed, 300, 20'000);
  SfSketch sketch(SfVariant::kSff, small_params(2, 16, 3, seed ^ 0x53));
  ExactOracle oracle;
  for (const auto& op : ops) {
    oracle.insert(op.key);
    sketch.oracle_assisted_insert(op.key, oracle.query(op.key));
  }
  Grid<std::uint64_t> expected(2, 16);
  for (const auto& [key, f] : oracle.distinct_items()) {
    for (std::size_t i = 0; i < 2; ++i) {
      auto& cell = expected.at(i, sketch.slim_bucket(i, key));
      cell = std::max(cell, f);
    }
  }
  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      if (sketch.slim().counters.at(i, j) != expected.at(i, j)) ++mismatches;
    }
  }
  return {"max-frequency", mismatches == 0, fmt::format("{} mismatched counters", mismatches)};
}

PropertyResult correct_rate(std::uint64_t seed) {
  const std::uint64_t v = 2000, w = 1000, d = 4;
  const auto ops = insert_stream(seed, v, 100'000);
  SfSketch sketch(SfVariant::kSff, small_params(d, w, 3, seed ^ 0x54));
  ExactOracle oracle;
  for (const auto& op : ops) {
    oracle.insert(op.key);
    sketch.oracle_assisted_insert(op.key, oracle.query(op.key));
  }
  const auto report =
      accuracy_report([&](std::uint64_t k) { return sketch.query(k); }, oracle, {}, Execution::kSerial);
  const double bound = correct_rate_bound(oracle.distinct_count(), w, d);
  return {"correct-rate-bound", report.correct_fraction >= bound - 0.02,
          fmt::format("empirical {:.4f} vs bound {:.4f}", report.correct_fraction, bound)};
}

PropertyResult slim_roundtrip(std::uint64_t seed) {
  const auto ops = mixed_stream(seed, 400, 10'000, 0.2);
  std::uint64_t failures = 0;
  for (SfVariant variant : {SfVariant::kSf1, SfVariant::kSf2, SfVariant::kSf3, SfVariant::kSf4,
                            SfVariant::kSff}) {
    SfSketch sketch(variant, small_params(3, 32, 3, seed ^ 0x55));
    for (const auto& op : ops) {
      if (op.op == OpType::kInsert) {
        sketch.insert(op.key);
      } else if (sketch.supports_deletion()) {
        sketch.remove(op.key);
      }
    }
    const auto bytes = sketch.export_slim();
    const auto collector = import_slim(bytes);
    if (collector.export_bytes() != bytes) ++failures;
    for (std::uint64_t r = 0; r < 500; ++r) {
      if (collector.query(item_key(r)) != sketch.query(item_key(r))) ++failures;
    }
  }
  return {"slim-roundtrip", failures == 0, fmt::format("{} failures", failures)};
}

PropertyResult clamp_equivalence(std::uint64_t seed) {
  const auto ops = mixed_stream(seed, 300, 10'000, 0.4);
  const auto params = small_params(3, 16, 4, seed ^ 0x56);
  SfSketch clamp(SfVariant::kSff, params, SffDeletionRule::kClamp);
  SfSketch trigger(SfVariant::kSff, params, SffDeletionRule::kChangedMaxTrigger);
  std::uint64_t divergent = 0;
  for (const auto& op : ops) {
    if (op.op == OpType::kInsert) {
      clamp.insert(op.key);
      trigger.insert(op.key);
    } else {
      clamp.remove(op.key);
      trigger.remove(op.key);
    }
    if (clamp.slim().counters != trigger.slim().counters) ++divergent;
  }
  return {"clamp-equivalence", divergent == 0, fmt::format("{} divergent steps", divergent)};
}

template <class F>
PropertyResult guarded(const char* name, F&& check) {
  try {
    return check();
  } catch (const SketchError& e) {
    return {name, false, fmt::format("threw: {}", e.what())};
  }
}

}  // namespace

std::vector<PropertyResult> run_selftest(const SelftestConfig& config) {
  const std::uint64_t s = config.seed;
  return {
      guarded("no-underestimation", [&] { return no_underestimation(s); }),
      guarded("bucket-max", [&] { return bucket_max(s, config.corrupt_clamp); }),
      guarded("max-frequency", [&] { return max_frequency(s); }),
      guarded("correct-rate-bound", [&] { return correct_rate(s); }),
      guarded("slim-roundtrip", [&] { return slim_roundtrip(s); }),
      guarded("clamp-equivalence", [&] { return clamp_equivalence(s); }),
  };
}

}  // namespace slimfat
