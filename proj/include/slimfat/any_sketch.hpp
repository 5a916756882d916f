#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "slimfat/baselines.hpp"
#include "slimfat/oracle.hpp"
#include "slimfat/sf_sketch.hpp"
#include "slimfat/workloads.hpp"

namespace slimfat {

enum class SketchKind { kCm, kCount, kCu, kCml, kSf1, kSf2, kSf3, kSf4, kSff, kOracle };

// CLI names: cm c cu cml sf1 sf2 sf3 sf4 sff oracle
std::string_view to_string(SketchKind kind) noexcept;
std::optional<SketchKind> parse_sketch_kind(std::string_view name) noexcept;

/// Runtime-selected sketch with the common insert/remove/query surface used by
/// the benchmark harness and the CLI. kOracle wraps an ExactOracle so a run can
/// include a perfect reference column.
class AnySketch {
 public:
  AnySketch(SketchKind kind, const SketchParams& params, double cml_base = kDefaultCmlBase,
            SffDeletionRule rule = SffDeletionRule::kClamp);

  void insert(std::uint64_t key);
  void remove(std::uint64_t key);
  void apply(const Operation& op);
  std::uint64_t query(std::uint64_t key) const;

  SketchKind kind() const noexcept { return kind_; }
  bool supports_deletion() const noexcept;
  // Throws kUnsupportedOperation for kOracle.
  SketchImage image() const;
  // Null for kOracle.
  const IncrementTally* tally() const noexcept;

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), impl_);
  }

 private:
  SketchKind kind_;
  std::variant<CmSketch, CountSketch, CuSketch, CmlSketch, SfSketch, ExactOracle> impl_;
};

}  // namespace slimfat
