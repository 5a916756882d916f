#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace slimfat {

// Byte 5 of the container. Code 5 is unassigned.
enum class VariantCode : std::uint8_t {
  kSf1 = 1,
  kSf2 = 2,
  kSf3 = 3,
  kSf4 = 4,
  kSff = 6,
  kCm = 10,
  kCount = 11,
  kCu = 12,
  kCml = 13,
};

bool is_known_variant(std::uint8_t code) noexcept;
bool is_slim_fat(VariantCode code) noexcept;

inline constexpr std::size_t kHeaderSize = 32;
inline constexpr std::uint8_t kFormatVersion = 1;

/// Decoded container contents.
///
/// Layout, little-endian:
///   0-3  "SFSK"          4  version (1)       5  variant code
///   6-7  reserved (0)    8-11  d (u32)        12-15  w (u32)
///   16-23  master seed   24-31  insertions seen
///   then d*w u32 counters, array-major. No trailing bytes.
/// Count-sketch counters are stored as the two's-complement bit pattern of
/// their i32 value; CML exponents are widened to u32.
struct SketchImage {
  VariantCode variant = VariantCode::kSff;
  std::uint32_t d = 0;
  std::uint32_t w = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t insertions_seen = 0;
  std::vector<std::uint32_t> counters;

  bool operator==(const SketchImage&) const = default;
};

std::vector<std::uint8_t> encode_image(const SketchImage& image);
// Throws ParseError with a distinct ParseFailure per defect.
SketchImage decode_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace slimfat
