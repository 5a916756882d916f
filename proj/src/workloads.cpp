#include "slimfat/workloads.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "slimfat/error.hpp"

namespace slimfat {

void WorkloadSpec::validate() const {
  if (kind == WorkloadKind::kTrace) {
    if (!trace_path) throw SketchError(ErrorKind::kConfiguration, "trace workload without a trace path");
    return;
  }
  if (distinct_items == 0 || distinct_items > std::numeric_limits<std::uint32_t>::max()) {
    throw SketchError(ErrorKind::kConfiguration, "distinct item count must be in [1, 2^32)");
  }
  if (!(zipf_skew > 0.0)) {
    throw SketchError(ErrorKind::kConfiguration, "zipf skew must be positive");
  }
  if (deletion_mode == DeletionMode::kInterleaved &&
      !(delete_probability >= 0.0 && delete_probability < 1.0)) {
    throw SketchError(ErrorKind::kConfiguration, "interleaved delete probability must be in [0, 1)");
  }
}

// ---------------------------------------------------------------- traces

std::optional<Operation> parse_trace_line(std::string_view line, std::size_t line_no) {
  if (line.empty() || line.front() == '#') return std::nullopt;
  const auto comma = line.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError(ParseFailure::kMalformedLine,
                     "line " + std::to_string(line_no) + ": expected <op>,<key>", line_no);
  }
  const auto token = line.substr(0, comma);
  Operation op;
  if (token == "I") {
    op.op = OpType::kInsert;
  } else if (token == "D") {
    op.op = OpType::kDelete;
  } else {
    throw ParseError(ParseFailure::kUnknownOp,
                     "line " + std::to_string(line_no) + ": unknown op '" + std::string(token) + "'",
                     line_no);
  }
  const auto digits = line.substr(comma + 1);
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  auto [end, ec] = std::from_chars(first, last, op.key);
  if (digits.empty() || ec != std::errc() || end != last) {
    throw ParseError(ParseFailure::kMalformedLine,
                     "line " + std::to_string(line_no) + ": bad key '" + std::string(digits) + "'",
                     line_no);
  }
  return op;
}

TraceReader::TraceReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
  if (!in_) throw SketchError(ErrorKind::kIo, "cannot open trace " + path.string());
}

std::optional<Operation> TraceReader::next() {
  while (std::getline(in_, line_)) {
    ++line_no_;
    if (auto op = parse_trace_line(line_, line_no_)) return op;
  }
  return std::nullopt;
}

void write_trace(const std::filesystem::path& path, std::span<const Operation> ops) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SketchError(ErrorKind::kIo, "cannot write trace " + path.string());
  for (const auto& op : ops) {
    out << (op.op == OpType::kInsert ? "I," : "D,") << op.key << '\n';
  }
  if (!out) throw SketchError(ErrorKind::kIo, "short write to " + path.string());
}

TraceReader read_trace(const std::filesystem::path& path) { return TraceReader(path); }

// ---------------------------------------------------------------- generators

Generator::Generator(const WorkloadSpec& spec) : spec_(spec), rng_(spec.seed) {
  spec_.validate();
  if (spec_.kind == WorkloadKind::kTrace) {
    trace_ = std::make_unique<TraceReader>(*spec_.trace_path);
    return;
  }
  if (spec_.kind == WorkloadKind::kZipf) {
    // Rank r (1-based) has weight r^-skew.
    zipf_cdf_.resize(spec_.distinct_items);
    double total = 0.0;
    for (std::uint64_t r = 0; r < spec_.distinct_items; ++r) {
      total += std::pow(static_cast<double>(r + 1), -spec_.zipf_skew);
      zipf_cdf_[r] = total;
    }
    for (auto& c : zipf_cdf_) c /= total;
    zipf_cdf_.back() = 1.0;
  }
  if (spec_.deletion_mode == DeletionMode::kReverseOrder) {
    history_.reserve(spec_.total_ops);
  } else if (spec_.deletion_mode == DeletionMode::kInterleaved) {
    live_count_.assign(spec_.distinct_items, 0);
    positive_slot_.assign(spec_.distinct_items, -1);
  }
}

std::uint64_t Generator::draw_rank() {
  if (spec_.kind == WorkloadKind::kZipf) {
    const double u = rng_.next_unit();
    const auto it = std::upper_bound(zipf_cdf_.begin(), zipf_cdf_.end(), u);
    return std::min<std::uint64_t>(it - zipf_cdf_.begin(), spec_.distinct_items - 1);
  }
  return rng_.next_below(spec_.distinct_items);
}

Operation Generator::interleaved_step() {
  const double u = rng_.next_unit();
  if (!positive_.empty() && u < spec_.delete_probability) {
    const auto slot = rng_.next_below(positive_.size());
    const std::uint32_t rank = positive_[slot];
    if (--live_count_[rank] == 0) {
      positive_slot_[positive_.back()] = static_cast<std::int64_t>(slot);
      positive_[slot] = positive_.back();
      positive_.pop_back();
      positive_slot_[rank] = -1;
    }
    return {OpType::kDelete, item_key(rank)};
  }
  const auto rank = static_cast<std::uint32_t>(draw_rank());
  if (live_count_[rank]++ == 0) {
    positive_slot_[rank] = static_cast<std::int64_t>(positive_.size());
    positive_.push_back(rank);
  }
  return {OpType::kInsert, item_key(rank)};
}

std::optional<Operation> Generator::next() {
  if (trace_) return trace_->next();
  const std::uint64_t n = spec_.total_ops;
  switch (spec_.deletion_mode) {
    case DeletionMode::kNone:
      if (emitted_ == n) return std::nullopt;
      ++emitted_;
      return Operation{OpType::kInsert, item_key(draw_rank())};
    case DeletionMode::kReverseOrder:
      if (emitted_ < n) {
        ++emitted_;
        history_.push_back(static_cast<std::uint32_t>(draw_rank()));
        return Operation{OpType::kInsert, item_key(history_.back())};
      }
      if (history_.empty()) return std::nullopt;
      {
        const std::uint32_t rank = history_.back();
        history_.pop_back();
        ++emitted_;
        return Operation{OpType::kDelete, item_key(rank)};
      }
    case DeletionMode::kInterleaved:
      if (emitted_ == n) return std::nullopt;
      ++emitted_;
      return interleaved_step();
  }
  return std::nullopt;
}

Generator generate(const WorkloadSpec& spec) { return Generator(spec); }

std::vector<Operation> materialize(const WorkloadSpec& spec) {
  Generator gen(spec);
  std::vector<Operation> ops;
  while (auto op = gen.next()) ops.push_back(*op);
  return ops;
}

}  // namespace slimfat
