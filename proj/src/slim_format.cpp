#include "slimfat/slim_format.hpp"

#include <fstream>
#include <iterator>
#include <string>

#include "slimfat/error.hpp"

namespace slimfat {

namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'F', 'S', 'K'};

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * b)));
  }
}

template <class T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    v |= static_cast<std::uint64_t>(bytes[offset + b]) << (8 * b);
  }
  return static_cast<T>(v);
}

}  // namespace

bool is_known_variant(std::uint8_t code) noexcept {
  switch (code) {
    case 1: case 2: case 3: case 4: case 6:
    case 10: case 11: case 12: case 13:
      return true;
    default:
      return false;
  }
}

bool is_slim_fat(VariantCode code) noexcept {
  return static_cast<std::uint8_t>(code) <= static_cast<std::uint8_t>(VariantCode::kSff);
}

std::vector<std::uint8_t> encode_image(const SketchImage& image) {
  if (image.counters.size() != static_cast<std::size_t>(image.d) * image.w) {
    throw SketchError(ErrorKind::kConfiguration, "counter count does not match d*w");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 4 * image.counters.size());
  for (std::uint8_t b : kMagic) out.push_back(b);
  out.push_back(kFormatVersion);
  out.push_back(static_cast<std::uint8_t>(image.variant));
  out.push_back(0);
  out.push_back(0);
  put_le<std::uint32_t>(out, image.d);
  put_le<std::uint32_t>(out, image.w);
  put_le<std::uint64_t>(out, image.master_seed);
  put_le<std::uint64_t>(out, image.insertions_seen);
  for (std::uint32_t c : image.counters) put_le<std::uint32_t>(out, c);
  return out;
}

SketchImage decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw ParseError(ParseFailure::kTruncated,
                     "input is " + std::to_string(bytes.size()) + " bytes, header needs 32");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (bytes[k] != kMagic[k]) throw ParseError(ParseFailure::kBadMagic, "missing SFSK magic");
  }
  if (bytes[4] != kFormatVersion) {
    throw ParseError(ParseFailure::kBadVersion,
                     "unsupported format version " + std::to_string(bytes[4]));
  }
  if (!is_known_variant(bytes[5])) {
    throw ParseError(ParseFailure::kBadVariant, "unknown variant code " + std::to_string(bytes[5]));
  }
  if (bytes[6] != 0 || bytes[7] != 0) {
    throw ParseError(ParseFailure::kBadReserved, "reserved header bytes must be zero");
  }
  SketchImage image;
  image.variant = static_cast<VariantCode>(bytes[5]);
  image.d = get_le<std::uint32_t>(bytes, 8);
  image.w = get_le<std::uint32_t>(bytes, 12);
  image.master_seed = get_le<std::uint64_t>(bytes, 16);
  image.insertions_seen = get_le<std::uint64_t>(bytes, 24);
  if (image.d == 0 || image.w == 0) {
    throw ParseError(ParseFailure::kBadDimensions, "d and w must be nonzero");
  }
  const std::uint64_t cells = static_cast<std::uint64_t>(image.d) * image.w;
  const std::uint64_t payload = bytes.size() - kHeaderSize;
  if (payload < 4 * cells) {
    throw ParseError(ParseFailure::kTruncated, "counter payload is truncated");
  }
  if (payload != 4 * cells) {
    throw ParseError(ParseFailure::kLengthMismatch, "trailing bytes after counter payload");
  }
  image.counters.resize(cells);
  for (std::uint64_t k = 0; k < cells; ++k) {
    image.counters[k] = get_le<std::uint32_t>(bytes, kHeaderSize + 4 * k);
  }
  return image;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SketchError(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SketchError(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SketchError(ErrorKind::kIo, "short write to " + path.string());
}

}  // namespace slimfat
