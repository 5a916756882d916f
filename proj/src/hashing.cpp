#include "slimfat/hashing.hpp"

#include <string>

#include "slimfat/error.hpp"

namespace slimfat {

std::uint64_t key_from_bytes(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return finalize64(h);
}

HashFamily::HashFamily(std::uint64_t master_seed, std::size_t d)
    : master_seed_(master_seed), depth_(d) {
  if (d == 0) {
    throw SketchError(ErrorKind::kConfiguration, "hash family needs d >= 1");
  }
  seeds_.reserve(3 * d);
  for (std::size_t k = 0; k < 3 * d; ++k) {
    seeds_.push_back(finalize64(master_seed + (k + 1) * kGolden));
  }
}

std::vector<std::uint64_t> HashFamily::per_array_seeds() const {
  return {seeds_.begin(), seeds_.begin() + static_cast<std::ptrdiff_t>(depth_)};
}

HashFamily derive_seeds(std::uint64_t master_seed, std::size_t d) {
  return HashFamily(master_seed, d);
}

namespace {

void check_array(const HashFamily& family, std::size_t i) {
  if (i >= family.depth()) {
    throw SketchError(ErrorKind::kConfiguration,
                      "array index " + std::to_string(i) + " out of range");
  }
}

}  // namespace

std::size_t bucket_hash(const HashFamily& family, std::size_t i, std::uint64_t item,
                        std::size_t range) {
  check_array(family, i);
  if (range == 0) throw SketchError(ErrorKind::kConfiguration, "bucket range must be >= 1");
  return family.bucket(i, item, range);
}

std::size_t slot_hash(const HashFamily& family, std::size_t i, std::uint64_t item,
                      std::size_t z) {
  check_array(family, i);
  if (z == 0) throw SketchError(ErrorKind::kConfiguration, "slot count z must be >= 1");
  return family.slot(i, item, z);
}

int sign_hash(const HashFamily& family, std::size_t i, std::uint64_t item) {
  check_array(family, i);
  return family.sign(i, item);
}

}  // namespace slimfat
