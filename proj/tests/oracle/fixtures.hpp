#pragma once

#include <random>
#include <string>
#include <vector>

#include "seqmine/sequence.hpp"

namespace seqmine::testing {

// "a(abc)(ac)d(cf)" -> {{a},{a,b,c},{a,c},{d},{c,f}}; single-character labels.
inline RawSequence raw_compact(const std::string& text) {
  RawSequence out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') {
      RawElement e;
      for (++i; text[i] != ')'; ++i) e.emplace_back(1, text[i]);
      out.push_back(e);
    } else {
      out.push_back({std::string(1, text[i])});
    }
  }
  return out;
}

// The four-sequence database whose single-item projections are the
// textbook PrefixSpan example.
inline SequenceDatabase classic_db() {
  return SequenceDatabase::from_raw({raw_compact("a(abc)(ac)d(cf)"), raw_compact("(ad)c(bc)(ae)"),
                                     raw_compact("(ef)(ab)(df)cb"), raw_compact("eg(af)cbc")},
                                    {"10", "20", "30", "40"});
}

// Four-row numeric example database.
inline SequenceDatabase numeric_db() {
  using R = RawSequence;
  return SequenceDatabase::from_raw(
      {
          R{{"1"}, {"2"}, {"1", "2"}, {"3"}, {"1", "3"}, {"4", "5"}, {"6"}},
          R{{"3", "4"}, {"3"}, {"2", "3"}, {"1", "4"}},
          R{{"4", "5"}, {"2"}, {"2", "3", "4"}, {"3"}, {"1"}},
          R{{"4"}, {"5"}, {"1", "6"}, {"3"}, {"2"}, {"7"}, {"1"}},
      },
      {"S1", "S2", "S3", "S4"});
}

struct RandomDbShape {
  std::size_t max_sequences = 10;
  std::size_t max_elements = 6;
  std::size_t alphabet = 8;
  std::size_t max_element_size = 3;
};

// Labels are single letters so results render compactly.
inline SequenceDatabase random_db(std::mt19937_64& rng, const RandomDbShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> n_seq(1, shape.max_sequences);
  std::uniform_int_distribution<std::size_t> n_elem(0, shape.max_elements);
  std::uniform_int_distribution<std::size_t> e_size(1, shape.max_element_size);
  std::uniform_int_distribution<std::size_t> item(0, shape.alphabet - 1);
  std::vector<RawSequence> raw;
  std::vector<std::string> ids;
  const std::size_t n = n_seq(rng);
  for (std::size_t s = 0; s < n; ++s) {
    RawSequence seq;
    const std::size_t len = n_elem(rng);
    for (std::size_t j = 0; j < len; ++j) {
      RawElement e;
      const std::size_t k = e_size(rng);
      for (std::size_t t = 0; t < k; ++t) e.emplace_back(1, static_cast<char>('a' + item(rng)));
      seq.push_back(e);
    }
    raw.push_back(seq);
    ids.push_back(std::to_string(s));
  }
  return SequenceDatabase::from_raw(raw, ids);
}

}  // namespace seqmine::testing
