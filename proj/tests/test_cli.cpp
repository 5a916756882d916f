#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "slimfat/sf_sketch.hpp"
#include "slimfat/slim_format.hpp"
#include "slimfat/workloads.hpp"

using namespace slimfat;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "slimfat_cli_test";

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(SLIMFAT_CLI) + " " + args;
  cmd += stdout_file.empty() ? " > /dev/null" : " > " + (kDir / stdout_file).string();
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

std::string slurp(const std::string& name) {
  std::ifstream in(kDir / name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& name, const std::string& body) {
  std::ofstream(kDir / name, std::ios::binary) << body;
}

struct Dir {
  Dir() { fs::create_directories(kDir); }
};
const Dir dir;

}  // namespace

TEST_CASE("build sff on the three-op fixture gives the golden file") {
  put("fx.txt", "I,42\nI,7\nD,42\n");
  REQUIRE(run("build --sketch sff --d 2 --w 4 --z 3 --seed 0 --trace " + path("fx.txt") + " --out " + path("a.bin")) == 0);
  const auto bytes = read_file_bytes(path("a.bin"));
  const std::vector<std::uint8_t> golden{
      'S', 'F', 'S', 'K', 1, 6, 0, 0, 2, 0, 0, 0, 4, 0, 0, 0,  //
      0,   0,   0,   0,   0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0,  //
      0,   0,   0,   0,   0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,  //
      0,   0,   0,   0,   0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(bytes == golden);

  REQUIRE(run("build --sketch sff --d 2 --w 4 --z 3 --seed 0 --trace " + path("fx.txt") + " --out " + path("b.bin")) == 0);
  CHECK(read_file_bytes(path("b.bin")) == bytes);
}

TEST_CASE("baseline dumps carry their variant codes") {
  put("ins.txt", "I,1\nI,2\nI,1\n");
  const std::pair<const char*, int> cases[] = {{"cm", 10}, {"c", 11}, {"cu", 12}, {"cml", 13},
                                               {"sf1", 1}, {"sf2", 2}, {"sf3", 3}, {"sf4", 4}};
  for (const auto& [name, code] : cases) {
    REQUIRE(run(std::string("build --sketch ") + name + " --d 3 --w 16 --trace " + path("ins.txt") + " --out " + path("x.bin")) == 0);
    const auto bytes = read_file_bytes(path("x.bin"));
    CHECK(bytes.size() == kHeaderSize + 3 * 16 * 4);
    CHECK(bytes[5] == code);
    REQUIRE(run("query --in " + path("x.bin") + " 1 2 3", "q.txt") == 0);
    CHECK_MESSAGE(slurp("q.txt").substr(0, 4) == "2\n1\n", name);
  }
}

TEST_CASE("error exits") {
  put("fx.txt", "I,42\nI,7\nD,42\n");
  put("bad.txt", "I,1\nQ,2\n");
  put("phantom.txt", "I,1\nD,1\nD,1\n");
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("build --sketch sf9 --trace " + path("fx.txt") + " --out " + path("z.bin")) == 2);
  CHECK(run("build --sketch sff --d 0 --trace " + path("fx.txt") + " --out " + path("z.bin")) == 2);
  CHECK(run("build --sketch sff --w 4") == 2);
  CHECK(run("build --sketch sf1 --d 2 --w 4 --trace " + path("fx.txt") + " --out " + path("z.bin")) == 4);
  CHECK(run("build --sketch cu --d 2 --w 4 --trace " + path("fx.txt") + " --out " + path("z.bin")) == 4);
  CHECK(run("build --sketch sff --d 2 --w 4 --trace " + path("phantom.txt") + " --out " + path("z.bin")) == 4);
  CHECK(run("build --sketch sff --d 2 --w 4 --trace " + path("bad.txt") + " --out " + path("z.bin")) == 3);
  CHECK(run("build --sketch sff --d 2 --w 4 --trace " + path("missing.txt") + " --out " + path("z.bin")) == 3);
  CHECK(run("query --in " + path("missing.bin") + " 1") == 3);
  put("junk.bin", "not a sketch at all, definitely not 32 bytes");
  CHECK(run("query --in " + path("junk.bin") + " 1") == 3);
}

TEST_CASE("query an empty export") {
  put("empty.txt", "");
  REQUIRE(run("build --sketch sff --d 2 --w 4 --trace " + path("empty.txt") + " --out " + path("e.bin")) == 0);
  CHECK(read_file_bytes(path("e.bin")).size() == 64);
  REQUIRE(run("query --in " + path("e.bin") + " 123", "q.txt") == 0);
  CHECK(slurp("q.txt") == "0\n");
}

TEST_CASE("query matches the live sketch for 1000 random keys") {
  WorkloadSpec spec;
  spec.distinct_items = 500;
  spec.total_ops = 10000;
  spec.seed = 3;
  spec.deletion_mode = DeletionMode::kInterleaved;
  spec.delete_probability = 0.3;
  const auto ops = materialize(spec);
  write_trace(kDir / "mix.txt", ops);
  SketchParams p;
  p.d = 3;
  p.w = 64;
  p.z = 3;
  p.master_seed = 11;
  SfSketch live(SfVariant::kSff, p);
  for (const auto& op : ops) op.op == OpType::kInsert ? live.insert(op.key) : live.remove(op.key);

  REQUIRE(run("build --sketch sff --d 3 --w 64 --z 3 --seed 11 --trace " + path("mix.txt") + " --out " + path("m.bin")) == 0);
  std::string keys, want;
  SplitMix64 rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto key = k % 2 ? rng.next() : item_key(rng.next_below(500));
    keys += std::to_string(key) + "\n";
    want += std::to_string(live.query(key)) + "\n";
  }
  put("keys.txt", keys);
  REQUIRE(run("query --in " + path("m.bin") + " < " + path("keys.txt"), "q.txt") == 0);
  CHECK(slurp("q.txt") == want);
}

TEST_CASE("export verb") {
  put("fx.txt", "I,42\nI,7\nD,42\n");
  REQUIRE(run("build --sketch sff --d 2 --w 4 --trace " + path("fx.txt") + " --out " + path("a.bin")) == 0);
  REQUIRE(run("export --in " + path("a.bin") + " --out " + path("a2.bin")) == 0);
  CHECK(read_file_bytes(path("a2.bin")) == read_file_bytes(path("a.bin")));
  REQUIRE(run("export --in " + path("a.bin") + " --out " + path("a.csv") + " --format csv") == 0);
  CHECK(slurp("a.csv") == "array,bucket,counter\n0,0,0\n0,1,0\n0,2,0\n0,3,1\n1,0,0\n1,1,0\n1,2,1\n1,3,0\n");
}

TEST_CASE("bench-accuracy writes reproducible CSVs") {
  const std::string args =
      "bench-accuracy --sketches cm,cu,sff,oracle --d 3 --w 100 --items 500 --ops 5000 "
      "--deletion reverse --checkpoint-every 1000 --seed 2 ";
  REQUIRE(run(args + "--out " + path("acc1.csv") + " --cdf-out " + path("cdf1.csv")) == 0);
  REQUIRE(run(args + "--out " + path("acc2.csv") + " --cdf-out " + path("cdf2.csv")) == 0);
  CHECK(slurp("acc1.csv") == slurp("acc2.csv"));
  CHECK(slurp("cdf1.csv") == slurp("cdf2.csv"));
  const auto acc = slurp("acc1.csv");
  CHECK(acc.rfind("sketch,phase,ops_done,are,correct_fraction\n", 0) == 0);
  CHECK(acc.find("oracle,insert,5000,0,1\n") != std::string::npos);
  CHECK(acc.find("oracle,delete,9000,0,1\n") != std::string::npos);
  CHECK(slurp("cdf1.csv").rfind("sketch,re_threshold,cdf_fraction\n", 0) == 0);
}

TEST_CASE("bench-speed") {
  REQUIRE(run("bench-speed --sketches cm,sff --d 3 --w 1000 --items 1000 --ops 20000 --threads 1,2 --reps 1 --out " +
              path("speed.csv")) == 0);
  const auto csv = slurp("speed.csv");
  CHECK(csv.rfind("sketch,mode,threads,ops_per_sec\n", 0) == 0);
  CHECK(csv.find("sff,query,2,") != std::string::npos);
  CHECK(run("bench-speed --ops 0 --out " + path("s0.csv")) == 2);
}

TEST_CASE("selftest exits") {
  REQUIRE(run("selftest --seed 4", "s1.txt") == 0);
  REQUIRE(run("selftest --seed 4", "s2.txt") == 0);
  CHECK(slurp("s1.txt") == slurp("s2.txt"));
  CHECK(run("selftest --corrupt-clamp", "s3.txt") == 5);
  CHECK(slurp("s3.txt").find("FAIL bucket-max") != std::string::npos);
}
