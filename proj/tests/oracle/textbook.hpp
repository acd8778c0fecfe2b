#pragma once

#include <algorithm>
#include <vector>

#include "seqmine/prefixspan.hpp"

namespace seqmine::testing {

// Textbook listings leave out items that are infrequent in the whole
// database, dropping elements that become empty.
inline Suffix without_items_below(const Suffix& s, const std::vector<ItemCount>& frequent) {
  auto keep = [&](ItemId x) {
    return std::any_of(frequent.begin(), frequent.end(), [&](const ItemCount& ic) { return ic.item == x; });
  };
  Suffix out;
  if (s.leading_partial) {
    std::vector<ItemId> items;
    for (ItemId x : *s.leading_partial)
      if (keep(x)) items.push_back(x);
    if (!items.empty()) out.leading_partial = items;
  }
  for (const auto& e : s.rest) {
    std::vector<ItemId> items;
    for (ItemId x : e.items())
      if (keep(x)) items.push_back(x);
    if (!items.empty()) out.rest.push_back(Element::from_items(items));
  }
  return out;
}

}  // namespace seqmine::testing
