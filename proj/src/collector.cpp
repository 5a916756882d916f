#include "slimfat/collector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slimfat {

CollectorSketch::CollectorSketch(SketchImage image, double cml_base)
    : image_(std::move(image)), hashes_(image_.master_seed, image_.d), cml_base_(cml_base) {}

std::uint64_t CollectorSketch::query(std::uint64_t key) const {
  const std::size_t d = image_.d;
  switch (image_.variant) {
    case VariantCode::kCount: {
      std::vector<std::int64_t> estimates(d);
      for (std::size_t i = 0; i < d; ++i) {
        estimates[i] = static_cast<std::int64_t>(static_cast<std::int32_t>(cell(i, key))) *
                       hashes_.sign(i, key);
      }
      return clamped_median(std::move(estimates));
    }
    case VariantCode::kCml: {
      std::uint32_t low = std::numeric_limits<std::uint32_t>::max();
      for (std::size_t i = 0; i < d; ++i) low = std::min(low, cell(i, key));
      return static_cast<std::uint64_t>(std::llround(cml_value(low, cml_base_)));
    }
    default: {
      std::uint32_t low = std::numeric_limits<std::uint32_t>::max();
      for (std::size_t i = 0; i < d; ++i) low = std::min(low, cell(i, key));
      return low;
    }
  }
}

CollectorSketch import_slim(std::span<const std::uint8_t> bytes, double cml_base) {
  return CollectorSketch(decode_image(bytes), cml_base);
}

}  // namespace slimfat
