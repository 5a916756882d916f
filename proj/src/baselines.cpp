#include "slimfat/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slimfat/error.hpp"

namespace slimfat {

namespace {

constexpr std::uint32_t kCounterMax = std::numeric_limits<std::uint32_t>::max();

[[noreturn]] void throw_overflow() {
  throw SketchError(ErrorKind::kCounterOverflow, "counter saturated at 2^32 - 1");
}

[[noreturn]] void throw_phantom(std::uint64_t key) {
  throw SketchError(ErrorKind::kPhantomDeletion,
                    "delete of key " + std::to_string(key) + " hits a zero counter");
}

[[noreturn]] void throw_no_delete(const char* sketch) {
  throw SketchError(ErrorKind::kUnsupportedOperation,
                    std::string(sketch) + " does not support deletion");
}

SketchParams checked(const SketchParams& params) {
  params.validate();
  return params;
}

SketchImage unsigned_image(VariantCode code, const SketchParams& p, std::uint64_t insertions,
                           std::span<const std::uint32_t> cells) {
  SketchImage image;
  image.variant = code;
  image.d = static_cast<std::uint32_t>(p.d);
  image.w = static_cast<std::uint32_t>(p.w);
  image.master_seed = p.master_seed;
  image.insertions_seen = insertions;
  image.counters.assign(cells.begin(), cells.end());
  return image;
}

}  // namespace

// ---------------------------------------------------------------- CM

CmSketch::CmSketch(const SketchParams& params)
    : params_(checked(params)),
      hashes_(params.master_seed, params.d),
      counters_(params.d, params.w),
      tally_(params.d) {}

void CmSketch::insert(std::uint64_t key) {
  const std::size_t d = params_.d, w = params_.w;
  for (std::size_t i = 0; i < d; ++i) {
    if (counters_.at(i, hashes_.bucket(i, key, w)) == kCounterMax) throw_overflow();
  }
  for (std::size_t i = 0; i < d; ++i) {
    ++counters_.at(i, hashes_.bucket(i, key, w));
    ++tally_.increments[i];
  }
  ++tally_.insertions;
}

void CmSketch::remove(std::uint64_t key) {
  const std::size_t d = params_.d, w = params_.w;
  for (std::size_t i = 0; i < d; ++i) {
    if (counters_.at(i, hashes_.bucket(i, key, w)) == 0) throw_phantom(key);
  }
  for (std::size_t i = 0; i < d; ++i) --counters_.at(i, hashes_.bucket(i, key, w));
  ++deletions_;
}

std::uint64_t CmSketch::query(std::uint64_t key) const {
  std::uint32_t best = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) {
    best = std::min(best, counters_.at(i, hashes_.bucket(i, key, params_.w)));
  }
  return best;
}

SketchImage CmSketch::image() const {
  return unsigned_image(VariantCode::kCm, params_, tally_.insertions, counters_.cells());
}

// ---------------------------------------------------------------- Count

CountSketch::CountSketch(const SketchParams& params)
    : params_(checked(params)),
      hashes_(params.master_seed, params.d),
      counters_(params.d, params.w),
      tally_(params.d) {}

void CountSketch::update(std::uint64_t key, int direction) {
  const std::size_t d = params_.d, w = params_.w;
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t next = static_cast<std::int64_t>(counters_.at(i, hashes_.bucket(i, key, w))) +
                              direction * hashes_.sign(i, key);
    if (next > std::numeric_limits<std::int32_t>::max() ||
        next < std::numeric_limits<std::int32_t>::min()) {
      throw SketchError(ErrorKind::kCounterOverflow, "signed counter out of i32 range");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    counters_.at(i, hashes_.bucket(i, key, w)) += direction * hashes_.sign(i, key);
  }
}

void CountSketch::insert(std::uint64_t key) {
  update(key, +1);
  for (auto& n : tally_.increments) ++n;
  ++tally_.insertions;
}

void CountSketch::remove(std::uint64_t key) { update(key, -1); }

std::uint64_t clamped_median(std::vector<std::int64_t> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::int64_t median;
  if (n % 2 == 1) {
    median = values[n / 2];
  } else {
    const std::int64_t sum = values[n / 2 - 1] + values[n / 2];
    median = sum / 2;
    if (sum % 2 != 0) median += sum > 0 ? 1 : -1;
  }
  return median > 0 ? static_cast<std::uint64_t>(median) : 0;
}

std::uint64_t CountSketch::query(std::uint64_t key) const {
  std::vector<std::int64_t> estimates(params_.d);
  for (std::size_t i = 0; i < params_.d; ++i) {
    estimates[i] = static_cast<std::int64_t>(counters_.at(i, hashes_.bucket(i, key, params_.w))) *
                   hashes_.sign(i, key);
  }
  return clamped_median(std::move(estimates));
}

SketchImage CountSketch::image() const {
  SketchImage image = unsigned_image(VariantCode::kCount, params_, tally_.insertions, {});
  image.counters.reserve(counters_.cells().size());
  for (std::int32_t c : counters_.cells()) image.counters.push_back(static_cast<std::uint32_t>(c));
  return image;
}

// ---------------------------------------------------------------- CU

CuSketch::CuSketch(const SketchParams& params)
    : params_(checked(params)),
      hashes_(params.master_seed, params.d),
      counters_(params.d, params.w),
      tally_(params.d) {}

void CuSketch::insert(std::uint64_t key) {
  const std::uint32_t low = static_cast<std::uint32_t>(query(key));
  if (low == kCounterMax) throw_overflow();
  for (std::size_t i = 0; i < params_.d; ++i) {
    auto& c = counters_.at(i, hashes_.bucket(i, key, params_.w));
    if (c == low) {
      ++c;
      ++tally_.increments[i];
    }
  }
  ++tally_.insertions;
}

void CuSketch::remove(std::uint64_t) { throw_no_delete("CU sketch"); }

std::uint64_t CuSketch::query(std::uint64_t key) const {
  std::uint32_t best = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) {
    best = std::min(best, counters_.at(i, hashes_.bucket(i, key, params_.w)));
  }
  return best;
}

SketchImage CuSketch::image() const {
  return unsigned_image(VariantCode::kCu, params_, tally_.insertions, counters_.cells());
}

// ---------------------------------------------------------------- CML

double cml_value(std::uint32_t exponent, double base) {
  if (exponent == 0) return 0.0;
  return std::expm1(exponent * std::log(base)) / (base - 1.0);
}

CmlSketch::CmlSketch(const SketchParams& params, double base)
    : CmlSketch(params, base, finalize64(params.master_seed ^ kSignSalt)) {}

CmlSketch::CmlSketch(const SketchParams& params, double base, std::uint64_t rng_seed)
    : params_(checked(params)),
      base_(base),
      hashes_(params.master_seed, params.d),
      exponents_(params.d, params.w),
      rng_(rng_seed),
      tally_(params.d),
      scratch_(params.d) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw SketchError(ErrorKind::kConfiguration, "CML base must be a finite value > 1");
  }
}

void CmlSketch::insert(std::uint64_t key) {
  std::uint16_t low = std::numeric_limits<std::uint16_t>::max();
  for (std::size_t i = 0; i < params_.d; ++i) {
    scratch_[i] = hashes_.bucket(i, key, params_.w);
    low = std::min(low, exponents_.at(i, scratch_[i]));
  }
  // One draw per insertion keeps the stream position equal to the op index.
  const double u = rng_.next_unit();
  const bool bump = u < std::pow(base_, -static_cast<double>(low));
  if (bump && low == std::numeric_limits<std::uint16_t>::max()) {
    throw SketchError(ErrorKind::kCounterOverflow, "CML exponent saturated at 2^16 - 1");
  }
  ++tally_.insertions;
  if (!bump) return;
  for (std::size_t i = 0; i < params_.d; ++i) {
    auto& c = exponents_.at(i, scratch_[i]);
    if (c == low) {
      ++c;
      ++tally_.increments[i];
    }
  }
}

void CmlSketch::remove(std::uint64_t) { throw_no_delete("CML sketch"); }

std::uint64_t CmlSketch::query(std::uint64_t key) const {
  std::uint16_t low = std::numeric_limits<std::uint16_t>::max();
  for (std::size_t i = 0; i < params_.d; ++i) {
    low = std::min(low, exponents_.at(i, hashes_.bucket(i, key, params_.w)));
  }
  return static_cast<std::uint64_t>(std::llround(cml_value(low, base_)));
}

SketchImage CmlSketch::image() const {
  SketchImage image = unsigned_image(VariantCode::kCml, params_, tally_.insertions, {});
  image.counters.assign(exponents_.cells().begin(), exponents_.cells().end());
  return image;
}

}  // namespace slimfat
