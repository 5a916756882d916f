// Serial vs OpenMP kernels: batch point queries and per-item accuracy evaluation.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "slimfat/collector.hpp"
#include "slimfat/kernels.hpp"
#include "slimfat/metrics.hpp"
#include "slimfat/sf_sketch.hpp"
#include "slimfat/workloads.hpp"

using namespace slimfat;

namespace {

template <class F>
double best_seconds(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t items = argc > 1 ? std::stoull(argv[1]) : 100'000;
  const std::uint64_t ops = argc > 2 ? std::stoull(argv[2]) : 2'000'000;
  const int reps = 3;

  SketchParams p;  // d=5, w=40000, z=3
  SfSketch sff(SfVariant::kSff, p);
  ExactOracle oracle;
  WorkloadSpec spec;
  spec.distinct_items = items;
  spec.total_ops = ops;
  auto gen = generate(spec);
  while (auto op = gen.next()) {
    sff.insert(op->key);
    oracle.insert(op->key);
  }
  const auto collector = import_slim(sff.export_slim());

  std::vector<std::uint64_t> keys;
  for (const auto& [key, f] : oracle.distinct_items()) keys.push_back(key);
  while (keys.size() < 2'000'000) keys.push_back(keys[keys.size() % items]);
  std::vector<std::uint64_t> serial(keys.size()), parallel(keys.size());

  fmt::print("kernel,variant,threads,seconds,ops_per_sec\n");
  const double ts = best_seconds(reps, [&] { batch_query_serial(collector, keys, serial); });
  fmt::print("batch_query,serial,1,{:.6f},{:.0f}\n", ts, keys.size() / ts);
  for (int t = 1; t <= std::max(4, available_threads()); t *= 2) {
    const double tp = best_seconds(reps, [&] { batch_query_parallel(collector, keys, parallel, t); });
    fmt::print("batch_query,openmp,{},{:.6f},{:.0f}\n", t, tp, keys.size() / tp);
    if (parallel != serial) {
      std::fprintf(stderr, "parallel batch query disagrees with serial at %d threads\n", t);
      return 1;
    }
  }

  auto q = [&](std::uint64_t k) { return sff.query(k); };
  AccuracyReport a, b;
  const double rs = best_seconds(reps, [&] { a = accuracy_report(q, oracle, {}, Execution::kSerial); });
  const double rp = best_seconds(reps, [&] { b = accuracy_report(q, oracle, {}, Execution::kParallel); });
  fmt::print("accuracy_report,serial,1,{:.6f},{:.0f}\n", rs, items / rs);
  fmt::print("accuracy_report,openmp,{},{:.6f},{:.0f}\n", available_threads(), rp, items / rp);
  if (a.are != b.are) {
    std::fprintf(stderr, "parallel accuracy report disagrees with serial\n");
    return 1;
  }
  return 0;
}
