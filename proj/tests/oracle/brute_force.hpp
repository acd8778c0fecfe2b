#pragma once

// Exhaustive reference implementations used only by tests. Nothing here
// calls into the miners or into contains_subsequence.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "seqmine/pattern.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine::oracle {

inline bool subset(const Element& big, const Element& small) {
  for (ItemId x : small.items())
    if (std::find(big.items().begin(), big.items().end(), x) == big.items().end()) return false;
  return true;
}

// Tries every admissible element for every pattern element.
inline bool contains_exhaustive(const Sequence& s, const Sequence& p, std::size_t si = 0, std::size_t pi = 0) {
  if (pi == p.size()) return true;
  for (std::size_t j = si; j < s.size(); ++j)
    if (subset(s[j], p[pi]) && contains_exhaustive(s, p, j + 1, pi + 1)) return true;
  return false;
}

inline std::uint32_t support_exhaustive(const SequenceDatabase& db, const Sequence& p) {
  std::uint32_t n = 0;
  for (const auto& s : db.sequences())
    if (contains_exhaustive(s, p)) ++n;
  return n;
}

// Every canonical sequence over `alphabet` items with 1..max_items items.
inline std::vector<Sequence> all_candidates(std::size_t alphabet, std::size_t max_items) {
  std::vector<Sequence> out;
  std::deque<Sequence> frontier{Sequence{}};
  while (!frontier.empty()) {
    Sequence p = frontier.front();
    frontier.pop_front();
    if (p.item_count() == max_items) continue;
    for (ItemId x = 0; x < alphabet; ++x) {
      Sequence s = p.with_s_extension(x);
      out.push_back(s);
      frontier.push_back(s);
      if (!p.empty() && x > p.back().back()) {
        Sequence i = p.with_i_extension(x);
        out.push_back(i);
        frontier.push_back(i);
      }
    }
  }
  return out;
}

// Every pattern that occurs in at least one sequence, with exhaustive
// support. A pattern with zero support cannot gain support by growing, so
// zero-support candidates are not extended.
inline std::vector<Pattern> occurring_patterns(const SequenceDatabase& db, std::optional<std::size_t> max_items) {
  std::vector<Pattern> out;
  std::deque<Sequence> frontier{Sequence{}};
  const std::size_t alphabet = db.dictionary().size();
  while (!frontier.empty()) {
    Sequence p = frontier.front();
    frontier.pop_front();
    if (max_items && p.item_count() >= *max_items) continue;
    auto consider = [&](Sequence c) {
      const auto n = support_exhaustive(db, c);
      if (n == 0) return;
      out.push_back({c, n});
      frontier.push_back(std::move(c));
    };
    for (ItemId x = 0; x < alphabet; ++x) {
      consider(p.with_s_extension(x));
      if (!p.empty() && x > p.back().back()) consider(p.with_i_extension(x));
    }
  }
  std::sort(out.begin(), out.end(), [](const Pattern& a, const Pattern& b) { return a.sequence < b.sequence; });
  return out;
}

inline std::vector<Pattern> filter(const std::vector<Pattern>& all, std::uint32_t min_count,
                                   std::optional<std::size_t> max_items) {
  std::vector<Pattern> out;
  for (const auto& p : all)
    if (p.support_count >= min_count && (!max_items || p.sequence.item_count() <= *max_items)) out.push_back(p);
  return out;
}

// First k items in canonical order, for k = 1 .. item_count - 1.
inline std::vector<Sequence> proper_prefixes(const Sequence& p) {
  std::vector<Sequence> out;
  Sequence cur;
  for (std::size_t e = 0; e < p.size(); ++e) {
    auto items = p[e].items();
    for (std::size_t k = 0; k < items.size(); ++k) {
      cur = k == 0 ? cur.with_s_extension(items[k]) : cur.with_i_extension(items[k]);
      out.push_back(cur);
    }
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace seqmine::oracle
