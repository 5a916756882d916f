#include <string>

#include "doctest.h"
#include "slimfat/baselines.hpp"
#include "slimfat/collector.hpp"
#include "slimfat/error.hpp"
#include "slimfat/sf_sketch.hpp"
#include "slimfat/slim_format.hpp"
#include "slimfat/workloads.hpp"

using namespace slimfat;

namespace {

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  std::vector<std::uint8_t> out;
  for (std::size_t k = 0; k < hex.size(); k += 2) out.push_back(std::stoi(hex.substr(k, 2), nullptr, 16));
  return out;
}

ParseFailure failure_of(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_image(bytes);
  } catch (const ParseError& e) {
    return e.failure();
  }
  FAIL("decode accepted malformed input");
  return ParseFailure::kMalformedLine;
}

SketchParams dims(std::size_t d, std::size_t w, std::size_t z, std::uint64_t seed) {
  SketchParams p;
  p.d = d;
  p.w = w;
  p.z = z;
  p.master_seed = seed;
  return p;
}

// Hand-assembled from the container layout with an independent hash model:
// d=2, w=4, seed 0, after "I,42 I,7 D,42" through SFF. h(42) = (2, 1), h(7) = (3, 2).
const char* kGoldenSff =
    "5346534b010600000200000004000000000000000000000002000000000000000000000000000000"
    "000000000100000000000000000000000100000000000000";

}  // namespace

TEST_CASE("golden SFF export") {
  SfSketch s(SfVariant::kSff, dims(2, 4, 3, 0));
  s.insert(42);
  s.insert(7);
  s.remove(42);
  CHECK(s.export_slim() == from_hex(kGoldenSff));
}

TEST_CASE("encode/decode round trip") {
  SketchImage img;
  img.variant = VariantCode::kCount;
  img.d = 3;
  img.w = 5;
  img.master_seed = 0x0123456789ABCDEFULL;
  img.insertions_seen = 77;
  for (std::uint32_t k = 0; k < 15; ++k) img.counters.push_back(k * 0x01010101u);
  img.counters[4] = static_cast<std::uint32_t>(-3);
  const auto bytes = encode_image(img);
  CHECK(bytes.size() == kHeaderSize + 60);
  CHECK(bytes[16] == 0xEF);
  CHECK(bytes[23] == 0x01);
  CHECK(bytes[24] == 77);
  CHECK(decode_image(bytes) == img);
  CHECK(encode_image(decode_image(bytes)) == bytes);
}

TEST_CASE("malformed containers map to distinct failures") {
  const auto good = from_hex(kGoldenSff);
  auto bad = good;
  bad[0] = 'X';
  CHECK(failure_of(bad) == ParseFailure::kBadMagic);
  bad = good;
  bad[4] = 2;
  CHECK(failure_of(bad) == ParseFailure::kBadVersion);
  bad = good;
  bad[5] = 5;
  CHECK(failure_of(bad) == ParseFailure::kBadVariant);
  bad[5] = 0;
  CHECK(failure_of(bad) == ParseFailure::kBadVariant);
  bad[5] = 14;
  CHECK(failure_of(bad) == ParseFailure::kBadVariant);
  bad = good;
  bad[7] = 1;
  CHECK(failure_of(bad) == ParseFailure::kBadReserved);
  bad = good;
  bad[8] = 0;
  CHECK(failure_of(bad) == ParseFailure::kBadDimensions);
  bad = good;
  bad.resize(20);
  CHECK(failure_of(bad) == ParseFailure::kTruncated);
  bad = good;
  bad.pop_back();
  CHECK(failure_of(bad) == ParseFailure::kTruncated);
  bad = good;
  bad.push_back(0);
  CHECK(failure_of(bad) == ParseFailure::kLengthMismatch);
  CHECK(failure_of({}) == ParseFailure::kTruncated);
}

TEST_CASE("variant codes") {
  for (int c = 0; c < 256; ++c) {
    const bool known = c == 1 || c == 2 || c == 3 || c == 4 || c == 6 || (c >= 10 && c <= 13);
    CHECK(is_known_variant(static_cast<std::uint8_t>(c)) == known);
  }
  CHECK(is_slim_fat(VariantCode::kSff));
  CHECK_FALSE(is_slim_fat(VariantCode::kCm));
}

TEST_CASE("baseline dumps use codes 10..13 and import to the same answers") {
  SketchParams p = dims(3, 32, 3, 4);
  CmSketch cm(p);
  CountSketch c(p);
  CuSketch cu(p);
  CmlSketch cml(p);
  WorkloadSpec spec;
  spec.distinct_items = 300;
  spec.total_ops = 5000;
  spec.seed = 4;
  for (const auto& op : materialize(spec)) {
    cm.insert(op.key);
    c.insert(op.key);
    cu.insert(op.key);
    cml.insert(op.key);
  }
  CHECK(cm.image().variant == VariantCode::kCm);
  CHECK(c.image().variant == VariantCode::kCount);
  CHECK(cu.image().variant == VariantCode::kCu);
  CHECK(cml.image().variant == VariantCode::kCml);
  const auto icm = import_slim(encode_image(cm.image()));
  const auto ic = import_slim(encode_image(c.image()));
  const auto icu = import_slim(encode_image(cu.image()));
  const auto icml = import_slim(encode_image(cml.image()));
  for (std::uint64_t r = 0; r < 400; ++r) {
    const auto k = item_key(r);
    CHECK(icm.query(k) == cm.query(k));
    CHECK(ic.query(k) == c.query(k));
    CHECK(icu.query(k) == cu.query(k));
    CHECK(icml.query(k) == cml.query(k));
  }
}

TEST_CASE("file io") {
  const auto path = std::filesystem::temp_directory_path() / "slimfat_format_test.bin";
  const auto bytes = from_hex(kGoldenSff);
  write_file_bytes(path, bytes);
  CHECK(read_file_bytes(path) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file_bytes(path), SketchError);
}
