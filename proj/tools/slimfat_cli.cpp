#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "slimfat/any_sketch.hpp"
#include "slimfat/bench.hpp"
#include "slimfat/collector.hpp"
#include "slimfat/error.hpp"
#include "slimfat/kernels.hpp"
#include "slimfat/selftest.hpp"
#include "slimfat/slim_format.hpp"
#include "slimfat/workloads.hpp"

using namespace slimfat;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kInputParse = 3,
  kContract = 4,
  kPropertyFailure = 5,
};

struct SketchFlags {
  std::size_t d = 5;
  std::size_t w = 40000;
  std::size_t z = 3;
  std::uint64_t seed = 0;

  SketchParams params() const {
    SketchParams p;
    p.d = d;
    p.w = w;
    p.z = z;
    p.master_seed = seed;
    p.validate();
    return p;
  }
};

void add_sketch_flags(CLI::App* cmd, SketchFlags& f) {
  cmd->add_option("--d", f.d, "arrays")->capture_default_str();
  cmd->add_option("--w", f.w, "buckets per array")->capture_default_str();
  cmd->add_option("--z", f.z, "fat counters per bucket")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
}

struct WorkloadFlags {
  std::string kind = "uniform";
  std::uint64_t items = 100'000;
  std::uint64_t ops = 10'000'000;
  double skew = 0.99;
  std::string deletion = "none";
  double delete_prob = 0.0;
  std::string trace;

  WorkloadSpec spec(std::uint64_t seed) const {
    WorkloadSpec s;
    s.distinct_items = items;
    s.total_ops = ops;
    s.zipf_skew = skew;
    s.seed = seed;
    s.delete_probability = delete_prob;
    if (kind == "uniform") s.kind = WorkloadKind::kUniform;
    else if (kind == "zipf") s.kind = WorkloadKind::kZipf;
    else s.kind = WorkloadKind::kTrace;
    if (!trace.empty()) s.trace_path = trace;
    if (deletion == "reverse") s.deletion_mode = DeletionMode::kReverseOrder;
    else if (deletion == "interleaved") s.deletion_mode = DeletionMode::kInterleaved;
    s.validate();
    return s;
  }
};

void add_workload_flags(CLI::App* cmd, WorkloadFlags& f) {
  cmd->add_option("--workload", f.kind, "uniform | zipf | trace")
      ->check(CLI::IsMember({"uniform", "zipf", "trace"}))
      ->capture_default_str();
  cmd->add_option("--items", f.items, "distinct items")->capture_default_str();
  cmd->add_option("--ops", f.ops, "operations (inserts for reverse deletion)")->capture_default_str();
  cmd->add_option("--skew", f.skew, "zipf skew")->capture_default_str();
  cmd->add_option("--deletion", f.deletion, "none | reverse | interleaved")
      ->check(CLI::IsMember({"none", "reverse", "interleaved"}))
      ->capture_default_str();
  cmd->add_option("--delete-prob", f.delete_prob, "interleaved delete probability")->capture_default_str();
  cmd->add_option("--trace", f.trace, "trace file for --workload trace");
}

std::vector<SketchKind> parse_kinds(const std::vector<std::string>& names, bool allow_oracle) {
  std::vector<SketchKind> kinds;
  for (const auto& n : names) {
    const auto k = parse_sketch_kind(n);
    if (!k || (!allow_oracle && *k == SketchKind::kOracle)) {
      throw SketchError(ErrorKind::kConfiguration, "unknown sketch '" + n + "'");
    }
    kinds.push_back(*k);
  }
  return kinds;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SketchError(ErrorKind::kIo, "cannot write " + path);
  return out;
}

std::uint64_t parse_key(std::string_view text) {
  std::uint64_t key = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), key);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ParseError(ParseFailure::kMalformedLine, "bad key '" + std::string(text) + "'");
  }
  return key;
}

int exit_code_for(const SketchError& e) {
  switch (e.kind()) {
    case ErrorKind::kConfiguration: return kUsage;
    case ErrorKind::kParse:
    case ErrorKind::kIo: return kInputParse;
    case ErrorKind::kPhantomDeletion:
    case ErrorKind::kUnsupportedOperation:
    case ErrorKind::kCounterOverflow: return kContract;
    case ErrorKind::kUndefinedMetric: return kPropertyFailure;
  }
  return kUsage;
}

int cmd_build(const std::string& sketch, const SketchFlags& flags, const std::string& trace,
              const std::string& out_path, double cml_base) {
  const auto kind = parse_kinds({sketch}, false).front();
  AnySketch s(kind, flags.params(), cml_base);
  auto reader = read_trace(trace);
  while (auto op = reader.next()) s.apply(*op);
  const auto bytes = encode_image(s.image());
  write_file_bytes(out_path, bytes);
  return kOk;
}

int cmd_query(const std::string& in, const std::vector<std::string>& keys, double cml_base) {
  const auto collector = import_slim(read_file_bytes(in), cml_base);
  std::string out;
  auto answer = [&](std::string_view text) { out += fmt::format("{}\n", collector.query(parse_key(text))); };
  if (!keys.empty()) {
    for (const auto& k : keys) answer(k);
  } else {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) answer(line);
    }
  }
  std::cout << out;
  return kOk;
}

int cmd_export(const std::string& in, const std::string& out_path, const std::string& format) {
  const auto image = decode_image(read_file_bytes(in));
  if (format == "binary") {
    write_file_bytes(out_path, encode_image(image));
    return kOk;
  }
  auto out = open_out(out_path);
  out << "array,bucket,counter\n";
  for (std::uint32_t i = 0; i < image.d; ++i) {
    for (std::uint32_t j = 0; j < image.w; ++j) {
      const std::uint32_t raw = image.counters[std::size_t{i} * image.w + j];
      if (image.variant == VariantCode::kCount) {
        out << fmt::format("{},{},{}\n", i, j, static_cast<std::int32_t>(raw));
      } else {
        out << fmt::format("{},{},{}\n", i, j, raw);
      }
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slim-Fat sketch toolkit"};
  app.require_subcommand(1);
  double cml_base = kDefaultCmlBase;
  app.add_option("--cml-base", cml_base, "CML counter base")->capture_default_str();

  auto* build = app.add_subcommand("build", "ingest a trace and write the sketch container");
  std::string build_sketch, build_trace, build_out;
  SketchFlags build_flags;
  build->add_option("--sketch", build_sketch, "cm c cu cml sf1 sf2 sf3 sf4 sff")->required();
  add_sketch_flags(build, build_flags);
  build->add_option("--trace", build_trace, "trace file")->required();
  build->add_option("--out", build_out, "output container")->required();

  auto* query = app.add_subcommand("query", "answer point queries from an exported container");
  std::string query_in;
  std::vector<std::string> query_keys;
  query->add_option("--in", query_in, "container file")->required();
  query->add_option("keys", query_keys, "keys (default: one per line on stdin)");

  auto* exp = app.add_subcommand("export", "validate a container and rewrite it (binary or csv)");
  std::string export_in, export_out, export_format = "binary";
  exp->add_option("--in", export_in, "container file")->required();
  exp->add_option("--out", export_out, "output file")->required();
  exp->add_option("--format", export_format, "binary | csv")
      ->check(CLI::IsMember({"binary", "csv"}))
      ->capture_default_str();

  auto* acc = app.add_subcommand("bench-accuracy", "ARE checkpoints and error CDF per sketch");
  std::vector<std::string> acc_sketches{"cm", "cu", "sff"};
  SketchFlags acc_flags;
  WorkloadFlags acc_work;
  std::uint64_t acc_every = 1'000'000;
  std::vector<double> acc_thresholds;
  std::string acc_out, acc_cdf_out;
  acc->add_option("--sketches", acc_sketches, "sketches to compare")->delimiter(',')->capture_default_str();
  add_sketch_flags(acc, acc_flags);
  add_workload_flags(acc, acc_work);
  acc->add_option("--checkpoint-every", acc_every, "ops between ARE snapshots")->capture_default_str();
  acc->add_option("--threshold", acc_thresholds, "extra CDF thresholds")->delimiter(',');
  acc->add_option("--out", acc_out, "ARE csv")->required();
  acc->add_option("--cdf-out", acc_cdf_out, "CDF csv")->required();

  auto* speed = app.add_subcommand("bench-speed", "update and query throughput");
  std::vector<std::string> speed_sketches{"cm", "cu", "sff"};
  SketchFlags speed_flags;
  WorkloadFlags speed_work;
  speed_work.ops = 1'000'000;
  std::vector<int> speed_threads{1};
  std::uint64_t speed_queries = 0;
  int speed_reps = 3;
  std::string speed_out;
  speed->add_option("--sketches", speed_sketches, "sketches to compare")->delimiter(',')->capture_default_str();
  add_sketch_flags(speed, speed_flags);
  add_workload_flags(speed, speed_work);
  speed->add_option("--threads", speed_threads, "query thread counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  speed->add_option("--query-ops", speed_queries, "queries per measurement (0: one per key)");
  speed->add_option("--reps", speed_reps, "repetitions, best kept")->check(CLI::PositiveNumber)->capture_default_str();
  speed->add_option("--out", speed_out, "speed csv")->required();

  auto* self = app.add_subcommand("selftest", "run the invariant suite");
  SelftestConfig self_cfg;
  self->add_option("--seed", self_cfg.seed, "seed")->capture_default_str();
  self->add_flag("--corrupt-clamp", self_cfg.corrupt_clamp)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(build_sketch, build_flags, build_trace, build_out, cml_base);
    if (*query) return cmd_query(query_in, query_keys, cml_base);
    if (*exp) return cmd_export(export_in, export_out, export_format);
    if (*acc) {
      AccuracyBenchConfig cfg;
      cfg.sketches = parse_kinds(acc_sketches, true);
      cfg.params = acc_flags.params();
      cfg.workload = acc_work.spec(acc_flags.seed);
      const std::uint64_t total = cfg.workload.deletion_mode == DeletionMode::kReverseOrder
                                      ? 2 * cfg.workload.total_ops
                                      : cfg.workload.total_ops;
      cfg.checkpoints = every_n_checkpoints(acc_every, total);
      cfg.extra_thresholds = acc_thresholds;
      cfg.cml_base = cml_base;
      const auto result = run_accuracy_bench(cfg);
      auto out = open_out(acc_out);
      write_accuracy_csv(out, result.rows);
      auto cdf = open_out(acc_cdf_out);
      write_cdf_csv(cdf, result.cdf);
      return kOk;
    }
    if (*speed) {
      SpeedBenchConfig cfg;
      cfg.sketches = parse_kinds(speed_sketches, true);
      cfg.params = speed_flags.params();
      cfg.workload = speed_work.spec(speed_flags.seed);
      cfg.threads = speed_threads;
      cfg.query_ops = speed_queries;
      cfg.repetitions = speed_reps;
      cfg.cml_base = cml_base;
      const auto rows = run_speed_bench(cfg);
      auto out = open_out(speed_out);
      write_speed_csv(out, rows);
      return kOk;
    }
    if (*self) {
      bool ok = true;
      for (const auto& p : run_selftest(self_cfg)) {
        std::cout << fmt::format("{} {} {}\n", p.passed ? "PASS" : "FAIL", p.name, p.detail);
        ok = ok && p.passed;
      }
      return ok ? kOk : kPropertyFailure;
    }
  } catch (const SketchError& e) {
    std::cerr << "slimfat: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "slimfat: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
