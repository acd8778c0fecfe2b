#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqmine {

using ItemId = std::uint32_t;

// Order used when assigning ids: labels that are both plain non-negative
// integers compare numerically, everything else compares as bytes, and
// numbers sort before words.
bool label_less(std::string_view a, std::string_view b) noexcept;

// Bijection between item labels and dense ids. Ids follow label_less order,
// so comparing ids is comparing labels.
class Dictionary {
 public:
  Dictionary() = default;

  static Dictionary from_labels(std::vector<std::string> labels);

  ItemId id(std::string_view label) const;  // throws UnknownLabel
  std::optional<ItemId> find(std::string_view label) const noexcept;
  const std::string& label(ItemId id) const { return labels_.at(id); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  // True when every label is one character, which enables the compact
  // "a(bc)(_d)" text form.
  bool compact() const noexcept { return compact_; }

  bool operator==(const Dictionary& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  bool compact_ = true;
};

// Non-empty, strictly increasing set of item ids.
class Element {
 public:
  explicit Element(ItemId single) : items_{single} {}

  // Sorts and removes duplicates. Throws EmptyElement when `items` is empty.
  static Element from_items(std::vector<ItemId> items);

  std::span<const ItemId> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  ItemId front() const noexcept { return items_.front(); }
  ItemId back() const noexcept { return items_.back(); }

  bool contains(ItemId item) const noexcept;
  // Subset test: every item of `other` is in this element.
  bool includes(const Element& other) const noexcept;
  // Copy with `item` appended; `item` must be greater than back().
  Element with_item(ItemId item) const;

  auto operator<=>(const Element&) const = default;

 private:
  Element() = default;
  std::vector<ItemId> items_;
};

class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Element> elements) : elements_(std::move(elements)) {}

  std::span<const Element> elements() const noexcept { return elements_; }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const Element& back() const { return elements_.back(); }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::size_t item_count() const noexcept;

  Sequence with_s_extension(ItemId item) const;
  Sequence with_i_extension(ItemId item) const;
  Sequence without_last_element() const;

  auto operator<=>(const Sequence&) const = default;

 private:
  std::vector<Element> elements_;
};

// Remainder of a sequence after a prefix occurrence. `leading_partial` holds
// the unconsumed tail of the element where the prefix ended (the "_" case).
struct Suffix {
  std::optional<std::vector<ItemId>> leading_partial;
  std::vector<Element> rest;

  bool empty() const noexcept { return !leading_partial && rest.empty(); }
  bool operator==(const Suffix&) const = default;
};

using RawElement = std::vector<std::string>;
using RawSequence = std::vector<RawElement>;

class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  // Throws InvalidConfig on size mismatch or ids outside the dictionary.
  SequenceDatabase(Dictionary dictionary, std::vector<Sequence> sequences,
                   std::vector<std::string> seq_ids);

  // Builds the dictionary from every label that occurs, then canonicalizes.
  static SequenceDatabase from_raw(const std::vector<RawSequence>& raw,
                                   std::vector<std::string> seq_ids);

  const Dictionary& dictionary() const noexcept { return dictionary_; }
  std::span<const Sequence> sequences() const noexcept { return sequences_; }
  std::span<const std::string> seq_ids() const noexcept { return seq_ids_; }
  const Sequence& operator[](std::size_t i) const { return sequences_[i]; }
  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }

  std::size_t total_elements() const noexcept;
  double average_elements() const noexcept;

 private:
  Dictionary dictionary_;
  std::vector<Sequence> sequences_;
  std::vector<std::string> seq_ids_;
};

// Resolves labels and sorts/dedups each element. Throws UnknownLabel or
// EmptyElement.
Sequence canonicalize(const RawSequence& raw, const Dictionary& dictionary);

// Order-preserving itemset-subset matching; the empty pattern is contained
// in every sequence.
bool contains_subsequence(const Sequence& s, const Sequence& p) noexcept;

bool is_prefix(const Sequence& b, const Sequence& a) noexcept;

// Suffix of `a` after the earliest occurrence of `b`; empty Suffix when `b`
// does not occur.
Suffix suffix(const Sequence& a, const Sequence& b);

// Text forms. Compact dictionaries render singleton elements bare and
// multi-item elements in parentheses ("a(bc)(_d)"); other dictionaries
// parenthesize every element and separate items with commas
// ("(1)(2)(1,2)(_4,5)").
std::string render(const Sequence& s, const Dictionary& dictionary);
std::string render(const Suffix& s, const Dictionary& dictionary);
// Same, enclosed in one extra pair of parentheses: "((ab)c)".
std::string render_wrapped(const Sequence& s, const Dictionary& dictionary);
std::string render_wrapped(const Suffix& s, const Dictionary& dictionary);

// Inverse of render() for sequences. In the general form labels must not
// contain '(', ')' or ','. Throws FormatError on malformed text.
RawSequence parse_sequence(std::string_view text, const Dictionary& dictionary);

}  // namespace seqmine
