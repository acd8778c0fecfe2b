#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracle/fixtures.hpp"
#include "seqmine/cli.hpp"
#include "seqmine/csv.hpp"
#include "seqmine/generator.hpp"

namespace fs = std::filesystem;
using namespace seqmine;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("seqmine_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) rows.push_back(*split_csv_line(line));
  return rows;
}

}  // namespace

TEST_CASE("mine rejects a support fraction above one") {
  auto dir = scratch("badsupport");
  auto r = run({"mine", "--input", "nope.csv", "--min-support", "1.5", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("min-support fraction must be in (0,1]") != std::string::npos);
  CHECK(run({"mine", "--min-support", "2"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("both miners write identical pattern files") {
  auto dir = scratch("numeric");
  auto input = dir / "numeric.spmf";
  {
    std::ofstream f(input);
    write_spmf(f, seqmine::testing::numeric_db());
  }
  for (const char* miner : {"prefixspan", "spam"}) {
    auto r = run({"mine", "--input", input.string(), "--format", "spmf", "--min-support", "2", "--miner", miner,
                  "--out", (dir / miner).string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("from 4 sequences") != std::string::npos);
  }
  const auto a = slurp(dir / "prefixspan" / "patterns.csv");
  CHECK(a == slurp(dir / "spam" / "patterns.csv"));
  CHECK(slurp(dir / "prefixspan" / "patterns.jsonl") == slurp(dir / "spam" / "patterns.jsonl"));
  CHECK(a.rfind("pattern,support_count,relative_support\n", 0) == 0);

  auto missing = run({"mine", "--input", (dir / "absent.spmf").string(), "--format", "spmf", "--min-support", "2",
                      "--out", dir.string()});
  CHECK(missing.code == 3);
}

TEST_CASE("mine on generated check-ins, sorted by support") {
  auto dir = scratch("singapore");
  auto data = dir / "checkins.csv";
  REQUIRE(run({"generate", "--users", "200", "--seed", "4", "--out", data.string()}).code == 0);
  auto r = run({"mine", "--input", data.string(), "--min-support", "0.02", "--max-length", "3", "--sort", "support", "--report-elements", "2",
                "--out", (dir / "out").string()});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(dir / "out" / "report.csv");
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"activity_sequence", "frequency", "support", "confidence"});
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i - 1][2]) >= std::stod(rows[i][2]));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0].find("Airport") == std::string::npos);
  CHECK(run({"mine", "--input", data.string(), "--min-support", "2", "--sort", "lift", "--out", dir.string()}).code == 2);
}

TEST_CASE("generate is deterministic and validates ranges") {
  auto dir = scratch("generate");
  for (const char* name : {"a.csv", "b.csv"})
    REQUIRE(run({"generate", "--users", "10", "--seed", "1", "--out", (dir / name).string()}).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(!slurp(dir / "a.csv").empty());
  auto bad = run({"generate", "--checkins-min", "10", "--checkins-max", "8", "--out", (dir / "c.csv").string()});
  CHECK(bad.code == 2);
  CHECK(run({"generate", "--shape", "cubes", "--out", (dir / "d.csv").string()}).code == 2);

  auto bms = run({"generate", "--shape", "bms", "--sequences", "2000", "--seed", "7", "--out", (dir / "b.spmf").string()});
  REQUIRE(bms.code == 0);
  std::ifstream in(dir / "b.spmf");
  CHECK(read_spmf(in).size() == 2000);
}

TEST_CASE("bench writes one row per miner and support") {
  auto dir = scratch("bench");
  auto r = run({"bench", "--shape", "bms", "--sequences", "3000", "--supports", "0.005,0.01,0.02", "--repeats", "3",
                "--out", dir.string()});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(dir / "bench.csv");
  REQUIRE(rows.size() == 7);
  auto cmp = csv_rows(dir / "comparison.csv");
  REQUIRE(cmp.size() == 4);
  for (std::size_t i = 1; i < cmp.size(); ++i) CHECK(cmp[i][4] == "true");
  CHECK(r.out.find("prefixspan") != std::string::npos);

  auto high = run({"bench", "--shape", "bms", "--sequences", "3000", "--supports", "0.9", "--repeats", "1", "--out",
                   (dir / "high").string()});
  REQUIRE(high.code == 0);
  auto hrows = csv_rows(dir / "high" / "bench.csv");
  REQUIRE(hrows.size() == 3);
  CHECK(hrows[1].back() == "0");
  CHECK(hrows[2].back() == "0");
}
