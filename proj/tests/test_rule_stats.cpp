#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracle/brute_force.hpp"
#include "oracle/fixtures.hpp"
#include "seqmine/error.hpp"
#include "seqmine/prefixspan.hpp"
#include "seqmine/rule_stats.hpp"

using namespace seqmine;
using seqmine::testing::numeric_db;

namespace {

Sequence num(const RawSequence& raw, const SequenceDatabase& db) { return canonicalize(raw, db.dictionary()); }

// Windows [i, j] containing p with no strictly narrower window containing p.
std::uint32_t minimal_windows_exhaustive(const Sequence& s, const Sequence& p) {
  auto window_contains = [&](std::size_t i, std::size_t j) {
    std::vector<Element> part(s.elements().begin() + static_cast<std::ptrdiff_t>(i),
                              s.elements().begin() + static_cast<std::ptrdiff_t>(j + 1));
    return oracle::contains_exhaustive(Sequence(part), p);
  };
  std::uint32_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!window_contains(i, j)) continue;
      const bool narrower = (i < j) && (window_contains(i + 1, j) || window_contains(i, j - 1));
      if (!narrower) ++n;
    }
  return n;
}

MinerConfig count_config(std::int64_t n) {
  MinerConfig cfg;
  cfg.min_support = MinSupport::count(n);
  return cfg;
}

SequenceDatabase activity_db() {
  return SequenceDatabase::from_raw(
      {
          {{"Shopping"}, {"Field"}, {"Nature"}, {"Shopping"}, {"Field"}, {"Nature"}},
          {{"Shopping"}, {"Dining"}, {"Field"}, {"Nature"}},
          {{"Dining"}, {"Shopping"}, {"Nature"}},
          {{"Shopping", "Dining"}, {"Field"}, {"Dining"}},
          {{"Field"}, {"Nature"}, {"Dining"}},
      },
      {"u1", "u2", "u3", "u4", "u5"});
}

}  // namespace

TEST_CASE("support examples") {
  auto db = numeric_db();
  auto one = pattern_support(db, num({{"1"}}, db));
  CHECK(one.count == 4);
  CHECK(one.relative == 1.0);
  auto sevens = pattern_support(db, num({{"7"}, {"7"}}, db));
  CHECK(sevens.count == 0);
  CHECK(sevens.relative == 0.0);
  for (const auto& s : db.sequences()) CHECK(pattern_support(db, s).count >= 1);
}

TEST_CASE("confidence examples") {
  auto db = numeric_db();
  // <(4 5)> occurs in S1 and S3; <(4 5)(2)> only in S3.
  auto p = num({{"4", "5"}, {"2"}}, db);
  CHECK(pattern_support(db, p).count == 1);
  CHECK(pattern_support(db, p.without_last_element()).count == 2);
  CHECK(rule_confidence(db, p) == doctest::Approx(0.5));
  CHECK(rule_confidence(db, num({{"2"}, {"1"}}, db)) == 1.0);
  CHECK(rule_confidence(db, num({{"1"}, {"3"}}, db)) == doctest::Approx(0.5));

  auto kind_of = [&](const Sequence& q) {
    try {
      rule_confidence(db, q);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::FormatError;
  };
  CHECK(kind_of(num({{"1"}}, db)) == ErrorKind::UndefinedConfidence);
  CHECK(kind_of(num({{"7"}, {"7"}, {"1"}}, db)) == ErrorKind::UndefinedConfidence);
}

TEST_CASE("minimal occurrence windows") {
  auto db = activity_db();
  const auto& d = db.dictionary();
  auto sfn = canonicalize({{"Shopping"}, {"Field"}, {"Nature"}}, d);
  CHECK(minimal_occurrences(db[0], sfn) == 2);
  CHECK(minimal_occurrences(db[1], sfn) == 1);
  CHECK(minimal_occurrences(db[2], sfn) == 0);
  CHECK(pattern_frequency(db, sfn) == 3);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = seqmine::testing::random_db(rng, {3, 8, 3, 2});
    for (const auto& p : mine(r, count_config(1)).patterns)
      for (const auto& s : r.sequences()) REQUIRE(minimal_occurrences(s, p.sequence) == minimal_windows_exhaustive(s, p.sequence));
  }
}

TEST_CASE("report rows") {
  auto db = activity_db();
  const auto& d = db.dictionary();
  auto set = mine(db, count_config(1));
  CHECK(build_report(PatternSet{}, db, {}).empty());

  auto rows = build_report(set, db, {});
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(r.pattern.sequence.size() == 3);
    for (const auto& e : r.pattern.sequence.elements()) CHECK(e.size() == 1);
    CHECK(r.frequency >= r.pattern.support_count);
    REQUIRE(r.confidence);
    CHECK(*r.confidence > 0.0);
    CHECK(*r.confidence <= 1.0);
    CHECK(*r.confidence == doctest::Approx(rule_confidence(db, r.pattern.sequence)));
  }
  CHECK(render_activity_sequence(rows.front().pattern.sequence, d) == "Shopping > Field > Nature");
  CHECK(rows.front().frequency == 3);
  CHECK(report_csv_row(rows.front(), d) == "Shopping > Field > Nature,3,0.400000,0.666667");

  ReportOptions all;
  all.elements.reset();
  all.singleton_elements = false;
  auto everything = build_report(set, db, all);
  CHECK(everything.size() == set.size());
  for (const auto& r : everything) CHECK(r.confidence.has_value() == (r.pattern.sequence.size() >= 2));
  auto mixed = canonicalize({{"Dining", "Shopping"}, {"Field"}}, d);
  CHECK(render_activity_sequence(mixed, d) == "(Dining + Shopping) > Field");
  CHECK(build_report(set, db, all, Execution::parallel).size() == everything.size());
}

TEST_CASE("row formatting") {
  auto d = Dictionary::from_labels({"Field", "Nature", "Shopping"});
  RuleRow row;
  row.pattern = {canonicalize({{"Shopping"}, {"Field"}, {"Nature"}}, d), 1};
  row.frequency = 1300;
  row.support = 0.144940;
  row.confidence = 0.031558;
  CHECK(report_csv_row(row, d) == "Shopping > Field > Nature,1300,0.144940,0.031558");
  row.confidence.reset();
  CHECK(report_csv_row(row, d) == "Shopping > Field > Nature,1300,0.144940,");
  CHECK(format_ratio(1.0) == "1.000000");
  CHECK(parse_sort_key("support") == SortKey::support);
  CHECK_FALSE(parse_sort_key("lift"));

  std::ostringstream csv, jsonl;
  write_report_csv(csv, {row}, d);
  CHECK(csv.str() == std::string(kReportHeader) + "\nShopping > Field > Nature,1300,0.144940,\n");
  write_report_jsonl(jsonl, {row}, d);
  auto j = nlohmann::json::parse(jsonl.str());
  CHECK(j["activity_sequence"] == "Shopping > Field > Nature");
  CHECK(j["confidence"].is_null());
}

TEST_CASE("property: sort order and monotone truncation") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto db = seqmine::testing::random_db(rng, {10, 6, 5, 2});
    auto set = mine(db, count_config(1));
    for (SortKey key : {SortKey::frequency, SortKey::support, SortKey::confidence}) {
      ReportOptions o;
      o.elements = 2;
      o.sort = key;
      auto full = build_report(set, db, o);
      for (std::size_t i = 1; i < full.size(); ++i) {
        if (key == SortKey::support) CHECK(full[i - 1].support >= full[i].support);
        if (key == SortKey::frequency) CHECK(full[i - 1].frequency >= full[i].frequency);
        if (key == SortKey::confidence) CHECK(*full[i - 1].confidence >= *full[i].confidence);
      }
      for (const auto& r : full) {
        CHECK(r.frequency >= r.pattern.support_count);
        CHECK(pattern_support(db, r.pattern.sequence).count <=
              pattern_support(db, r.pattern.sequence.without_last_element()).count);
      }
      for (std::size_t k = 0; k < full.size(); ++k) {
        o.top_k = k;
        auto small = build_report(set, db, o);
        o.top_k = k + 1;
        auto big = build_report(set, db, o);
        REQUIRE(small.size() + 1 == big.size());
        for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i].pattern == big[i].pattern);
      }
    }
  }
}

TEST_CASE("pattern writers") {
  auto db = numeric_db();
  auto set = mine(db, count_config(4));
  std::ostringstream csv, jsonl;
  write_patterns_csv(csv, set, db.dictionary());
  CHECK(csv.str().rfind(std::string(kPatternHeader) + "\n1,4,1.000000\n", 0) == 0);
  write_patterns_jsonl(jsonl, set, db.dictionary());
  std::istringstream lines(jsonl.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["support_count"] == 4);
    ++n;
  }
  CHECK(n == set.size());
}
