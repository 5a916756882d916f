#include "slimfat/any_sketch.hpp"

#include <array>
#include <utility>

#include "slimfat/error.hpp"

namespace slimfat {

namespace {

constexpr std::array<std::pair<SketchKind, std::string_view>, 10> kNames{{
    {SketchKind::kCm, "cm"},
    {SketchKind::kCount, "c"},
    {SketchKind::kCu, "cu"},
    {SketchKind::kCml, "cml"},
    {SketchKind::kSf1, "sf1"},
    {SketchKind::kSf2, "sf2"},
    {SketchKind::kSf3, "sf3"},
    {SketchKind::kSf4, "sf4"},
    {SketchKind::kSff, "sff"},
    {SketchKind::kOracle, "oracle"},
}};

using Impl = std::variant<CmSketch, CountSketch, CuSketch, CmlSketch, SfSketch, ExactOracle>;

Impl make_impl(SketchKind kind, const SketchParams& params, double cml_base,
               SffDeletionRule rule) {
  switch (kind) {
    case SketchKind::kCm: return CmSketch(params);
    case SketchKind::kCount: return CountSketch(params);
    case SketchKind::kCu: return CuSketch(params);
    case SketchKind::kCml: return CmlSketch(params, cml_base);
    case SketchKind::kSf1: return SfSketch(SfVariant::kSf1, params, rule);
    case SketchKind::kSf2: return SfSketch(SfVariant::kSf2, params, rule);
    case SketchKind::kSf3: return SfSketch(SfVariant::kSf3, params, rule);
    case SketchKind::kSf4: return SfSketch(SfVariant::kSf4, params, rule);
    case SketchKind::kSff: return SfSketch(SfVariant::kSff, params, rule);
    case SketchKind::kOracle: return ExactOracle{};
  }
  throw SketchError(ErrorKind::kConfiguration, "unknown sketch kind");
}

}  // namespace

std::string_view to_string(SketchKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<SketchKind> parse_sketch_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

AnySketch::AnySketch(SketchKind kind, const SketchParams& params, double cml_base,
                     SffDeletionRule rule)
    : kind_(kind), impl_(make_impl(kind, params, cml_base, rule)) {}

void AnySketch::insert(std::uint64_t key) {
  std::visit([key](auto& s) { s.insert(key); }, impl_);
}

void AnySketch::remove(std::uint64_t key) {
  std::visit([key](auto& s) { s.remove(key); }, impl_);
}

void AnySketch::apply(const Operation& op) {
  if (op.op == OpType::kInsert) {
    insert(op.key);
  } else {
    remove(op.key);
  }
}

std::uint64_t AnySketch::query(std::uint64_t key) const {
  return std::visit([key](const auto& s) -> std::uint64_t { return s.query(key); }, impl_);
}

bool AnySketch::supports_deletion() const noexcept {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExactOracle>) {
          return true;
        } else {
          return s.supports_deletion();
        }
      },
      impl_);
}

SketchImage AnySketch::image() const {
  return std::visit(
      [](const auto& s) -> SketchImage {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExactOracle>) {
          throw SketchError(ErrorKind::kUnsupportedOperation, "the exact oracle has no image");
        } else if constexpr (std::is_same_v<T, SfSketch>) {
          return s.slim_image();
        } else {
          return s.image();
        }
      },
      impl_);
}

const IncrementTally* AnySketch::tally() const noexcept {
  return std::visit(
      [](const auto& s) -> const IncrementTally* {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExactOracle>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, SfSketch>) {
          return &s.slim().tally;
        } else {
          return &s.tally();
        }
      },
      impl_);
}

}  // namespace slimfat
