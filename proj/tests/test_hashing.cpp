#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "doctest.h"
#include "slimfat/error.hpp"
#include "slimfat/hashing.hpp"

using namespace slimfat;

namespace {

// Straight transcription of the public splitmix64 reference, kept apart from
// the library's finalize64.
std::uint64_t reference_splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double chi_square(const std::vector<double>& observed, double expected) {
  double chi = 0.0;
  for (double o : observed) chi += (o - expected) * (o - expected) / expected;
  return chi;
}

}  // namespace

TEST_CASE("finalize64 matches the published splitmix64 stream") {
  // First two outputs of splitmix64 seeded with 0.
  CHECK(finalize64(kGolden) == 0xE220A8397B1DCDAFULL);
  CHECK(finalize64(2 * kGolden) == 0x6E789E6AA1B965F4ULL);
  std::uint64_t state = 12345;
  SplitMix64 rng(12345);
  for (int k = 0; k < 100; ++k) CHECK(rng.next() == reference_splitmix(state));
}

TEST_CASE("derive_seeds") {
  SUBCASE("seed 0, d 1 gives finalize64(golden)") {
    const auto family = derive_seeds(0, 1);
    REQUIRE(family.per_array_seeds().size() == 1);
    CHECK(family.array_seed(0) == 0xE220A8397B1DCDAFULL);
  }
  SUBCASE("deterministic") {
    const auto a = derive_seeds(77, 3);
    const auto b = derive_seeds(77, 3);
    CHECK(a.per_array_seeds() == b.per_array_seeds());
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.slot_seed(i) == b.slot_seed(i));
      CHECK(a.fat_seed(i) == b.fat_seed(i));
    }
  }
  SUBCASE("seed 1, d 5 gives five distinct seeds") {
    const auto seeds = derive_seeds(1, 5).per_array_seeds();
    const std::array<std::uint64_t, 5> expected{0x910a2dec89025cc1ULL, 0xbeeb8da1658eec67ULL,
                                                0xf893a2eefb32555eULL, 0x71c18690ee42c90bULL,
                                                0x71bb54d8d101b5b9ULL};
    CHECK(std::equal(seeds.begin(), seeds.end(), expected.begin()));
    CHECK(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == 5);
  }
  SUBCASE("all 3d seeds distinct for d up to 64") {
    for (std::uint64_t master : {0ULL, 1ULL, 0xDEADBEEFULL}) {
      const HashFamily family(master, 64);
      std::set<std::uint64_t> seen;
      for (std::size_t i = 0; i < 64; ++i) {
        seen.insert(family.array_seed(i));
        seen.insert(family.slot_seed(i));
        seen.insert(family.fat_seed(i));
      }
      CHECK(seen.size() == 192);
    }
  }
  SUBCASE("d = 0 is a configuration error") {
    CHECK_THROWS_AS(derive_seeds(0, 0), SketchError);
  }
}

TEST_CASE("bucket_hash") {
  const auto family = derive_seeds(1, 2);
  SUBCASE("single bucket") {
    for (std::uint64_t item = 0; item < 100; ++item) CHECK(bucket_hash(family, 0, item, 1) == 0);
  }
  SUBCASE("matches the formula and is deterministic") {
    CHECK(bucket_hash(family, 1, 99, 40000) == finalize64(99 ^ family.array_seed(1)) % 40000);
    CHECK(bucket_hash(family, 1, 99, 40000) == bucket_hash(family, 1, 99, 40000));
  }
  SUBCASE("range 0 and bad index are errors") {
    CHECK_THROWS_AS(bucket_hash(family, 0, 1, 0), SketchError);
    CHECK_THROWS_AS(bucket_hash(family, 2, 1, 8), SketchError);
  }
  SUBCASE("10^4 items over 16 buckets stay within 3 sigma of 625") {
    std::vector<double> hist(16, 0.0);
    for (std::uint64_t item = 0; item < 10000; ++item) hist[bucket_hash(family, 0, item, 16)] += 1;
    const double sigma = std::sqrt(10000.0 * (1.0 / 16) * (15.0 / 16));
    for (double h : hist) CHECK(std::abs(h - 625.0) <= 3 * sigma);
    CHECK(chi_square(hist, 625.0) < 37.697);  // chi2(15) at p = 0.001
  }
}

TEST_CASE("slot_hash") {
  const auto family = derive_seeds(3, 4);
  CHECK(slot_hash(family, 2, 5, 1) == 0);
  CHECK(slot_hash(family, 2, 5, 7) == slot_hash(family, 2, 5, 7));
  CHECK(slot_hash(family, 2, 5, 7) == finalize64(5 ^ family.slot_seed(2)) % 7);
  CHECK_THROWS_AS(slot_hash(family, 0, 5, 0), SketchError);
  std::vector<double> hist(4, 0.0);
  for (std::uint64_t item = 0; item < 10000; ++item) hist[slot_hash(family, 1, item, 4)] += 1;
  CHECK(chi_square(hist, 2500.0) < 16.266);  // chi2(3) at p = 0.001
}

TEST_CASE("sign_hash") {
  const auto family = derive_seeds(5, 3);
  std::size_t plus = 0;
  for (std::uint64_t item = 0; item < 10000; ++item) {
    const int s = sign_hash(family, 0, item);
    CHECK((s == 1 || s == -1));
    CHECK(s == sign_hash(family, 0, item));
    if (s == 1) ++plus;
  }
  const double fraction = plus / 10000.0;
  CHECK(fraction >= 0.47);
  CHECK(fraction <= 0.53);
}

TEST_CASE("fold_to_slim translates the 1-based fold") {
  CHECK(fold_to_slim(4, 4) == 0);  // 1-based (5 - 1) % 4 + 1 = 1
  CHECK(fold_to_slim(0, 9) == 0);
  CHECK(fold_to_slim(7, 3) == 1);
  // Every fat bucket j + m*w folds back to j.
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t m = 0; m < 3; ++m) CHECK(fold_to_slim(j + m * 5, 5) == j);
  }
}

TEST_CASE("outputs stay in range over 10^6 fuzzed inputs") {
  SplitMix64 rng(2024);
  const auto family = derive_seeds(rng.next(), 8);
  bool ok = true;
  for (int k = 0; k < 1'000'000; ++k) {
    const std::uint64_t item = rng.next();
    const std::size_t range = 1 + rng.next_below(100000);
    const std::size_t i = rng.next_below(8);
    ok = ok && family.bucket(i, item, range) < range && family.slot(i, item, 1 + range % 17) < 1 + range % 17 &&
         family.fat_bucket(i, item, range) < range;
  }
  CHECK(ok);
}

TEST_CASE("array hashes are pairwise independent") {
  const auto family = derive_seeds(11, 2);
  SplitMix64 rng(99);
  std::vector<double> joint(16, 0.0);
  for (int k = 0; k < 10000; ++k) {
    const auto item = rng.next();
    joint[family.bucket(0, item, 4) * 4 + family.bucket(1, item, 4)] += 1;
  }
  // Contingency-table independence test, (4-1)(4-1) = 9 degrees of freedom.
  std::vector<double> row(4, 0.0), col(4, 0.0);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      row[a] += joint[a * 4 + b];
      col[b] += joint[a * 4 + b];
    }
  }
  double chi = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const double e = row[a] * col[b] / 10000.0;
      chi += (joint[a * 4 + b] - e) * (joint[a * 4 + b] - e) / e;
    }
  }
  CHECK(chi < 27.877);  // chi2(9) at p = 0.001
}

TEST_CASE("string keys go through FNV-1a then finalize64") {
  CHECK(key_from_bytes("a") == finalize64(0xAF63DC4C8601EC8CULL));
  CHECK(key_from_bytes("") == finalize64(0xCBF29CE484222325ULL));
}
