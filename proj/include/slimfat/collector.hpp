#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slimfat/baselines.hpp"
#include "slimfat/hashing.hpp"
#include "slimfat/slim_format.hpp"

namespace slimfat {

/// Query-only sketch rebuilt from an exported image: the counters plus the
/// hash family recomputed from the master seed. Immutable, so one instance can
/// serve any number of concurrent query workers.
///
/// Slim-Fat images, CM and CU answer with the minimum hashed counter; Count
/// images with the signed median; CML images decode the minimum exponent
/// with `cml_base` (the base is not part of the format).
class CollectorSketch {
 public:
  explicit CollectorSketch(SketchImage image, double cml_base = kDefaultCmlBase);

  std::uint64_t query(std::uint64_t key) const;

  const SketchImage& image() const noexcept { return image_; }
  std::vector<std::uint8_t> export_bytes() const { return encode_image(image_); }

 private:
  std::uint32_t cell(std::size_t i, std::uint64_t key) const noexcept {
    return image_.counters[i * image_.w + hashes_.bucket(i, key, image_.w)];
  }

  SketchImage image_;
  HashFamily hashes_;
  double cml_base_;
};

// decode_image + CollectorSketch. Throws ParseError on malformed input.
CollectorSketch import_slim(std::span<const std::uint8_t> bytes,
                            double cml_base = kDefaultCmlBase);

}  // namespace slimfat
