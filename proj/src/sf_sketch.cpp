#include "slimfat/sf_sketch.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "slimfat/error.hpp"

namespace slimfat {

namespace {

constexpr std::uint32_t kCounterMax = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::string_view to_string(SfVariant variant) noexcept {
  switch (variant) {
    case SfVariant::kSf1: return "sf1";
    case SfVariant::kSf2: return "sf2";
    case SfVariant::kSf3: return "sf3";
    case SfVariant::kSf4: return "sf4";
    case SfVariant::kSff: return "sff";
  }
  return "sf?";
}

std::uint32_t FatSubsketchBucketed::bucket_max(std::size_t i, std::size_t j) const noexcept {
  const auto cells = bucket(i, j);
  return *std::max_element(cells.begin(), cells.end());
}

std::uint64_t FatSubsketchBucketed::bucket_sum(std::size_t i, std::size_t j) const noexcept {
  std::uint64_t sum = 0;
  for (std::uint32_t c : bucket(i, j)) sum += c;
  return sum;
}

SfSketch::SfSketch(SfVariant variant, const SketchParams& params, SffDeletionRule deletion_rule)
    : variant_(variant),
      params_(params),
      deletion_rule_(deletion_rule),
      hashes_(params.master_seed, params.d),
      slim_idx_(params.d),
      fat_idx_(params.d),
      old_max_(params.d) {
  params_.validate();
  const std::size_t d = params_.d, w = params_.w, z = params_.z;
  slim_.counters = Grid<std::uint32_t>(d, w);
  slim_.tally = IncrementTally(d);
  switch (variant_) {
    case SfVariant::kSf1:
    case SfVariant::kSf2:
      flat_.counters = Grid<std::uint32_t>(d, params_.fat_width());
      break;
    case SfVariant::kSf3:
      // The fold requires w' = z*w exactly; a configured w' is ignored.
      flat_.counters = Grid<std::uint32_t>(d, z * w);
      break;
    case SfVariant::kSf4:
    case SfVariant::kSff:
      bucketed_.w = w;
      bucketed_.z = z;
      bucketed_.counters.assign(d * w * z, 0);
      break;
    default:
      throw SketchError(ErrorKind::kConfiguration, "unknown Slim-Fat variant");
  }
  if (variant_ == SfVariant::kSf2) deletion_ = DeletionSubsketch{Grid<std::uint32_t>(d, w)};
}

const FatSubsketchFlat* SfSketch::flat_fat() const noexcept {
  return bucketed() ? nullptr : &flat_;
}

const FatSubsketchBucketed* SfSketch::bucketed_fat() const noexcept {
  return bucketed() ? &bucketed_ : nullptr;
}

const DeletionSubsketch* SfSketch::deletion_subsketch() const noexcept {
  return deletion_ ? &*deletion_ : nullptr;
}

std::size_t SfSketch::slim_bucket(std::size_t i, std::uint64_t key) const noexcept {
  // For SF3 this equals fold_to_slim(g_i(key), w) because w divides z*w.
  return hashes_.bucket(i, key, params_.w);
}

void SfSketch::locate(std::uint64_t key) { compute_indices(key, slim_idx_, fat_idx_); }

void SfSketch::compute_indices(std::uint64_t key, std::span<std::size_t> slim_idx,
                               std::span<std::size_t> fat_idx) const noexcept {
  const std::size_t d = params_.d, w = params_.w, z = params_.z;
  switch (variant_) {
    case SfVariant::kSf1:
    case SfVariant::kSf2: {
      const std::size_t wp = flat_.counters.cols();
      for (std::size_t i = 0; i < d; ++i) {
        slim_idx[i] = hashes_.bucket(i, key, w);
        fat_idx[i] = i * wp + hashes_.fat_bucket(i, key, wp);
      }
      break;
    }
    case SfVariant::kSf3: {
      const std::size_t wp = z * w;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t g = hashes_.bucket(i, key, wp);
        slim_idx[i] = fold_to_slim(g, w);
        fat_idx[i] = i * wp + g;
      }
      break;
    }
    case SfVariant::kSf4:
    case SfVariant::kSff:
      for (std::size_t i = 0; i < d; ++i) {
        slim_idx[i] = hashes_.bucket(i, key, w);
        fat_idx[i] = (i * w + slim_idx[i]) * z + hashes_.slot(i, key, z);
      }
      break;
  }
}

std::uint32_t& SfSketch::fat_at(std::size_t flat_index) noexcept {
  return bucketed() ? bucketed_.counters[flat_index] : flat_.counters.storage()[flat_index];
}

std::uint32_t SfSketch::fat_value(std::size_t flat_index) const noexcept {
  return bucketed() ? bucketed_.counters[flat_index] : flat_.counters.cells()[flat_index];
}

void SfSketch::slim_phase(std::uint64_t gate) {
  auto& a = slim_.counters;
  std::uint32_t low = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) low = std::min(low, a.at(i, slim_idx_[i]));
  if (low >= gate) return;
  for (std::size_t i = 0; i < params_.d; ++i) {
    auto& c = a.at(i, slim_idx_[i]);
    if (c == low) {
      ++c;
      ++slim_.tally.increments[i];
    }
  }
}

void SfSketch::fat_phase() {
  for (std::size_t i = 0; i < params_.d; ++i) {
    if (fat_at(fat_idx_[i]) == kCounterMax ||
        (deletion_ && deletion_->counters.at(i, slim_idx_[i]) == kCounterMax)) {
      throw SketchError(ErrorKind::kCounterOverflow, "fat counter saturated at 2^32 - 1");
    }
  }
  for (std::size_t i = 0; i < params_.d; ++i) {
    ++fat_at(fat_idx_[i]);
    if (deletion_) ++deletion_->counters.at(i, slim_idx_[i]);
  }
}

void SfSketch::insert(std::uint64_t key) {
  locate(key);
  fat_phase();
  // b_min is read after the fat increment.
  std::uint32_t b_min = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) b_min = std::min(b_min, fat_at(fat_idx_[i]));
  slim_phase(b_min);
  ++slim_.tally.insertions;
}

void SfSketch::oracle_assisted_insert(std::uint64_t key, std::uint64_t true_freq) {
  locate(key);
  fat_phase();
  slim_phase(true_freq);
  ++slim_.tally.insertions;
}

void SfSketch::remove(std::uint64_t key) {
  if (variant_ == SfVariant::kSf1) {
    throw SketchError(ErrorKind::kUnsupportedOperation, "SF1 does not support deletion");
  }
  locate(key);
  const std::size_t d = params_.d, w = params_.w, z = params_.z;
  for (std::size_t i = 0; i < d; ++i) {
    if (fat_at(fat_idx_[i]) == 0 ||
        (deletion_ && deletion_->counters.at(i, slim_idx_[i]) == 0)) {
      throw SketchError(ErrorKind::kPhantomDeletion,
                        "delete of key " + std::to_string(key) + " hits a zero counter");
    }
  }
  const bool trigger = variant_ == SfVariant::kSff &&
                       deletion_rule_ == SffDeletionRule::kChangedMaxTrigger;
  if (trigger) {
    for (std::size_t i = 0; i < d; ++i) old_max_[i] = bucketed_.bucket_max(i, slim_idx_[i]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    --fat_at(fat_idx_[i]);
    if (deletion_) --deletion_->counters.at(i, slim_idx_[i]);
  }

  auto& a = slim_.counters;
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t j = slim_idx_[i];
    auto& c = a.at(i, j);
    switch (variant_) {
      case SfVariant::kSf2:
        if (c > deletion_->counters.at(i, j)) --c;
        break;
      case SfVariant::kSf3: {
        const auto row = flat_.counters.row(i);
        std::uint64_t sum = 0;
        for (std::size_t m = 0; m < z; ++m) sum += row[j + m * w];
        if (c > sum) --c;
        break;
      }
      case SfVariant::kSf4:
        if (c > bucketed_.bucket_sum(i, j)) --c;
        break;
      case SfVariant::kSff: {
        const std::uint32_t top = bucketed_.bucket_max(i, j);
        switch (deletion_rule_) {
          case SffDeletionRule::kClamp:
            c = std::min(c, top);
            break;
          case SffDeletionRule::kChangedMaxTrigger:
            if (top != old_max_[i] && c > top) c = top;
            break;
          case SffDeletionRule::kSkipClampForTesting:
            break;
        }
        break;
      }
      case SfVariant::kSf1:
        break;
    }
  }
}

std::uint64_t SfSketch::query(std::uint64_t key) const {
  std::uint32_t low = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) {
    low = std::min(low, slim_.counters.at(i, hashes_.bucket(i, key, params_.w)));
  }
  return low;
}

FatObservation SfSketch::observe_fat(std::uint64_t key) const {
  std::vector<std::size_t> slim_idx(params_.d), fat_idx(params_.d);
  compute_indices(key, slim_idx, fat_idx);
  FatObservation obs;
  obs.b_min = kCounterMax;
  for (std::size_t i = 0; i < params_.d; ++i) {
    obs.b_min = std::min(obs.b_min, fat_value(fat_idx[i]));
    if (bucketed()) obs.b_max_per_array.push_back(bucketed_.bucket_max(i, slim_idx[i]));
  }
  return obs;
}

SketchImage SfSketch::slim_image() const {
  SketchImage image;
  image.variant = static_cast<VariantCode>(variant_);
  image.d = static_cast<std::uint32_t>(params_.d);
  image.w = static_cast<std::uint32_t>(params_.w);
  image.master_seed = params_.master_seed;
  image.insertions_seen = slim_.tally.insertions;
  image.counters.assign(slim_.counters.cells().begin(), slim_.counters.cells().end());
  return image;
}

}  // namespace slimfat
