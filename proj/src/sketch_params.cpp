#include "slimfat/sketch_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slimfat/error.hpp"

namespace slimfat {

void SketchParams::validate() const {
  if (d == 0 || w == 0 || z == 0) {
    throw SketchError(ErrorKind::kConfiguration, "d, w and z must all be >= 1");
  }
  if (fat_width() < w) {
    throw SketchError(ErrorKind::kConfiguration,
                      "fat width " + std::to_string(fat_width()) + " is below w");
  }
}

SketchParams SketchParams::from_error_bounds(double epsilon, double delta, std::size_t z,
                                             std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw SketchError(ErrorKind::kConfiguration, "epsilon and delta must lie in (0, 1)");
  }
  SketchParams p;
  p.d = static_cast<std::size_t>(std::ceil(std::log(1.0 / delta)));
  p.w = static_cast<std::size_t>(std::ceil(std::numbers::e / epsilon));
  p.z = z;
  p.master_seed = seed;
  p.validate();
  return p;
}

}  // namespace slimfat
