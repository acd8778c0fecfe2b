#include <random>

#include "doctest.h"
#include "oracle/brute_force.hpp"
#include "oracle/fixtures.hpp"
#include "seqmine/error.hpp"
#include "seqmine/sequence.hpp"

using namespace seqmine;
using seqmine::testing::raw_compact;

namespace {

Dictionary letters() { return Dictionary::from_labels({"a", "b", "c", "d", "e", "f", "g"}); }

Sequence seq(const std::string& text, const Dictionary& d = letters()) { return canonicalize(raw_compact(text), d); }

Sequence random_sequence(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_elements) {
  std::uniform_int_distribution<std::size_t> len(0, max_elements), size(1, 3);
  std::uniform_int_distribution<ItemId> item(0, static_cast<ItemId>(alphabet - 1));
  std::vector<Element> elements;
  for (std::size_t j = len(rng); j > 0; --j) {
    std::vector<ItemId> items;
    for (std::size_t k = size(rng); k > 0; --k) items.push_back(item(rng));
    elements.push_back(Element::from_items(items));
  }
  return Sequence(elements);
}

}  // namespace

TEST_CASE("label order puts numbers first and compares them numerically") {
  CHECK(label_less("2", "10"));
  CHECK_FALSE(label_less("10", "2"));
  CHECK(label_less("497", "a"));
  CHECK(label_less("Dining", "Hiking"));
  auto d = Dictionary::from_labels({"10", "b", "2", "a", "2"});
  REQUIRE(d.size() == 4);
  CHECK(d.label(0) == "2");
  CHECK(d.label(1) == "10");
  CHECK(d.label(2) == "a");
  CHECK_FALSE(d.compact());
  CHECK_THROWS_AS(d.id("zz"), Error);
}

TEST_CASE("canonicalize sorts and collapses elements") {
  auto d = letters();
  auto s = canonicalize({{"b", "a"}, {"c"}}, d);
  REQUIRE(s.size() == 2);
  CHECK(render(s, d) == "(ab)c");
  CHECK(canonicalize({}, d).empty());
  auto dup = canonicalize({{"a", "a", "b"}}, d);
  CHECK(dup[0].size() == 2);
  CHECK(render(dup, d) == "(ab)");

  try {
    canonicalize({{"a"}, {}}, d);
    FAIL("expected EmptyElement");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyElement);
  }
  try {
    canonicalize({{"q"}}, d);
    FAIL("expected UnknownLabel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownLabel);
  }
}

TEST_CASE("containment examples") {
  auto db = seqmine::testing::numeric_db();
  const auto& d = db.dictionary();
  auto p = canonicalize({{"1", "2"}, {"4", "5"}}, d);
  CHECK(contains_subsequence(db[0], p));
  CHECK(contains_subsequence(db[1], Sequence{}));
  auto s12 = canonicalize({{"1"}, {"2"}}, d);
  auto s21 = canonicalize({{"2"}, {"1"}}, d);
  CHECK_FALSE(contains_subsequence(s12, s21));
}

TEST_CASE("prefix examples") {
  CHECK(is_prefix(seq("(ab)"), seq("(abc)d")));
  CHECK_FALSE(is_prefix(seq("(ac)"), seq("(abc)")));
  CHECK(is_prefix(seq("a"), seq("a(abc)(ac)d(cf)")));
  CHECK(is_prefix(seq("a(ab)"), seq("a(abc)(ac)")));
  CHECK_FALSE(is_prefix(seq("ab"), seq("a(abc)")));
  CHECK_FALSE(is_prefix(seq("a(abc)c"), seq("a(abc)")));
}

TEST_CASE("suffix examples") {
  auto d = letters();
  auto s1 = suffix(seq("a(abc)(ac)d(cf)"), seq("a"));
  CHECK_FALSE(s1.leading_partial);
  CHECK(render_wrapped(s1, d) == "((abc)(ac)d(cf))");
  auto s2 = suffix(seq("(ad)c(bc)(ae)"), seq("a"));
  REQUIRE(s2.leading_partial);
  CHECK(*s2.leading_partial == std::vector<ItemId>{d.id("d")});
  CHECK(render_wrapped(s2, d) == "((_d)c(bc)(ae))");

  auto db = seqmine::testing::numeric_db();
  auto nums = db.dictionary();
  CHECK(suffix(canonicalize({{"1"}, {"2"}}, nums), canonicalize({{"7"}}, nums)).empty());

  // Earliest occurrence of every prefix element.
  CHECK(render(suffix(seq("a(abc)(ac)d(cf)"), seq("ac")), d) == "(ac)d(cf)");
  CHECK(render(suffix(seq("a(abc)(ac)d(cf)"), seq("(ab)")), d) == "(_c)(ac)d(cf)");
}

TEST_CASE("render forms") {
  auto db = seqmine::testing::numeric_db();
  const auto& d = db.dictionary();
  CHECK(render(db[0], d) == "12(12)3(13)(45)6");
  auto general = Dictionary::from_labels({"Dining", "Hiking", "Shopping"});
  auto s = canonicalize({{"Dining"}, {"Shopping", "Hiking"}}, general);
  CHECK(render(s, general) == "(Dining)(Hiking,Shopping)");
  CHECK(render_wrapped(s, general) == "((Dining)(Hiking,Shopping))");
  CHECK(canonicalize(parse_sequence(render(s, general), general), general) == s);
  CHECK_THROWS_AS(parse_sequence("(Dining", general), Error);
  CHECK_THROWS_AS(parse_sequence("a(b", letters()), Error);
}

TEST_CASE("property: canonicalize is idempotent through render and parse") {
  std::mt19937_64 rng(11);
  for (auto d : {letters(), Dictionary::from_labels({"1", "2", "10", "11", "Dining", "Nature"})}) {
    for (int trial = 0; trial < 300; ++trial) {
      auto s = random_sequence(rng, d.size(), 6);
      auto again = canonicalize(parse_sequence(render(s, d), d), d);
      REQUIRE(again == s);
    }
  }
}

TEST_CASE("property: suffix of a concatenation recovers the tail") {
  std::mt19937_64 rng(12);
  const auto d = letters();
  for (int trial = 0; trial < 500; ++trial) {
    auto b = random_sequence(rng, d.size(), 4);
    auto s = random_sequence(rng, d.size(), 4);
    if (b.empty()) continue;
    // b must not occur earlier than where it is placed; building a from b's
    // own elements and a tail that starts with a fresh element guarantees
    // the earliest occurrence is the leading copy.
    std::vector<Element> joined(b.elements().begin(), b.elements().end());
    joined.insert(joined.end(), s.elements().begin(), s.elements().end());
    auto got = suffix(Sequence(joined), b);
    CHECK_FALSE(got.leading_partial);
    CHECK(got.rest == std::vector<Element>(s.elements().begin(), s.elements().end()));

    // With a partial boundary: items above b's last max go to the partial.
    const ItemId top = b.back().back();
    if (top + 1 < d.size()) {
      auto widened = b.back().with_item(top + 1);
      std::vector<Element> with_partial(b.elements().begin(), b.elements().end() - 1);
      with_partial.push_back(widened);
      with_partial.insert(with_partial.end(), s.elements().begin(), s.elements().end());
      auto got2 = suffix(Sequence(with_partial), b);
      REQUIRE(got2.leading_partial);
      CHECK(*got2.leading_partial == std::vector<ItemId>{top + 1});
      CHECK(got2.rest == std::vector<Element>(s.elements().begin(), s.elements().end()));
    }
  }
}

TEST_CASE("property: prefix implies containment and greedy matches exhaustive") {
  std::mt19937_64 rng(13);
  const auto d = letters();
  for (int trial = 0; trial < 3000; ++trial) {
    auto a = random_sequence(rng, 5, 6);
    auto b = random_sequence(rng, 5, 3);
    const bool contained = contains_subsequence(a, b);
    REQUIRE(contained == oracle::contains_exhaustive(a, b));
    if (!b.empty() && is_prefix(b, a)) CHECK(contained);
    // Either no occurrence, or b followed by the suffix fits inside a.
    auto suf = suffix(a, b);
    if (!contained) {
      CHECK(suf.empty());
    } else if (!suf.empty()) {
      std::vector<Element> rebuilt(b.elements().begin(), b.elements().end());
      rebuilt.insert(rebuilt.end(), suf.rest.begin(), suf.rest.end());
      CHECK(contains_subsequence(a, Sequence(rebuilt)));
    }
  }
}

TEST_CASE("database validation") {
  auto d = letters();
  CHECK_THROWS_AS(SequenceDatabase(d, {seq("ab")}, {}), Error);
  auto bad = Sequence({Element(40)});
  CHECK_THROWS_AS(SequenceDatabase(d, {bad}, {"x"}), Error);
  auto db = seqmine::testing::classic_db();
  CHECK(db.size() == 4);
  CHECK(db.total_elements() == 20);
  CHECK(db.average_elements() == doctest::Approx(5.0));
}
