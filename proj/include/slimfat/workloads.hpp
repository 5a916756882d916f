#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slimfat/hashing.hpp"

namespace slimfat {

enum class OpType : std::uint8_t { kInsert, kDelete };

struct Operation {
  OpType op = OpType::kInsert;
  std::uint64_t key = 0;

  bool operator==(const Operation&) const = default;
};

enum class WorkloadKind { kUniform, kZipf, kTrace };

enum class DeletionMode {
  kNone,          // total_ops inserts
  kReverseOrder,  // total_ops inserts, then the same keys deleted last-first
  kInterleaved,   // total_ops ops; each step deletes with probability p
};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kUniform;
  std::uint64_t distinct_items = 100'000;
  std::uint64_t total_ops = 10'000'000;
  double zipf_skew = 0.99;
  std::uint64_t seed = 0;
  DeletionMode deletion_mode = DeletionMode::kNone;
  double delete_probability = 0.0;  // interleaved mode only
  std::optional<std::filesystem::path> trace_path;

  // Throws kConfiguration on an invalid combination.
  void validate() const;
};

// Item of rank r, spread over the 64-bit key space.
constexpr std::uint64_t item_key(std::uint64_t rank) noexcept { return finalize64(rank); }

/// Streaming reader for the text trace format:
///   "I,<key>" or "D,<key>" per LF-terminated line, key a decimal u64,
///   lines starting with '#' and blank lines ignored.
/// Throws ParseError carrying the 1-based line number on bad input.
class TraceReader {
 public:
  explicit TraceReader(const std::filesystem::path& path);

  std::optional<Operation> next();

 private:
  std::ifstream in_;
  std::string line_;
  std::size_t line_no_ = 0;
};

// Parses one trace line (without its terminator). Returns nullopt for
// comments and blank lines.
std::optional<Operation> parse_trace_line(std::string_view line, std::size_t line_no);

void write_trace(const std::filesystem::path& path, std::span<const Operation> ops);

/// Deterministic single-consumer operation stream described by a WorkloadSpec.
class Generator {
 public:
  explicit Generator(const WorkloadSpec& spec);

  std::optional<Operation> next();

 private:
  std::uint64_t draw_rank();
  Operation interleaved_step();

  WorkloadSpec spec_;
  SplitMix64 rng_;
  std::vector<double> zipf_cdf_;
  std::unique_ptr<TraceReader> trace_;
  std::uint64_t emitted_ = 0;
  // Reverse-order mode: ranks inserted so far, replayed backwards.
  std::vector<std::uint32_t> history_;
  // Interleaved mode: live count per rank and the set of ranks with count > 0.
  std::vector<std::uint64_t> live_count_;
  std::vector<std::uint32_t> positive_;
  std::vector<std::int64_t> positive_slot_;
};

Generator generate(const WorkloadSpec& spec);
TraceReader read_trace(const std::filesystem::path& path);

// Drains a stream into memory.
std::vector<Operation> materialize(const WorkloadSpec& spec);

}  // namespace slimfat
