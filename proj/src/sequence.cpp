#include "seqmine/sequence.hpp"

#include <algorithm>
#include <charconv>

#include "seqmine/error.hpp"

namespace seqmine {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::EmptyElement: return "EmptyElement";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::UndefinedConfidence: return "UndefinedConfidence";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

namespace {

std::optional<unsigned long long> as_number(std::string_view s) noexcept {
  if (s.empty() || s.size() > 18) return std::nullopt;
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) noexcept {
  auto na = as_number(a);
  auto nb = as_number(b);
  if (na && nb) {
    if (*na != *nb) return *na < *nb;
    return a < b;  // "01" vs "1"
  }
  if (na.has_value() != nb.has_value()) return na.has_value();
  return a < b;
}

Dictionary Dictionary::from_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end(),
            [](const std::string& x, const std::string& y) { return label_less(x, y); });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Dictionary d;
  d.compact_ = std::all_of(labels.begin(), labels.end(),
                           [](const std::string& l) { return l.size() == 1; });
  d.labels_ = std::move(labels);
  return d;
}

std::optional<ItemId> Dictionary::find(std::string_view label) const noexcept {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& x, std::string_view y) { return label_less(x, y); });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<ItemId>(it - labels_.begin());
}

ItemId Dictionary::id(std::string_view label) const {
  if (auto found = find(label)) return *found;
  throw Error(ErrorKind::UnknownLabel, "unknown item label '" + std::string(label) + "'");
}

Element Element::from_items(std::vector<ItemId> items) {
  if (items.empty()) throw Error(ErrorKind::EmptyElement, "element has no items");
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Element e;
  e.items_ = std::move(items);
  return e;
}

bool Element::contains(ItemId item) const noexcept {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Element::includes(const Element& other) const noexcept {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

Element Element::with_item(ItemId item) const {
  if (item <= items_.back()) throw Error(ErrorKind::InvalidConfig, "I-extension item must follow the element's items");
  Element e = *this;
  e.items_.push_back(item);
  return e;
}

std::size_t Sequence::item_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : elements_) n += e.size();
  return n;
}

Sequence Sequence::with_s_extension(ItemId item) const {
  Sequence s = *this;
  s.elements_.emplace_back(item);
  return s;
}

Sequence Sequence::with_i_extension(ItemId item) const {
  Sequence s = *this;
  s.elements_.back() = s.elements_.back().with_item(item);
  return s;
}

Sequence Sequence::without_last_element() const {
  Sequence s = *this;
  if (!s.elements_.empty()) s.elements_.pop_back();
  return s;
}

SequenceDatabase::SequenceDatabase(Dictionary dictionary, std::vector<Sequence> sequences,
                                   std::vector<std::string> seq_ids)
    : dictionary_(std::move(dictionary)),
      sequences_(std::move(sequences)),
      seq_ids_(std::move(seq_ids)) {
  if (sequences_.size() != seq_ids_.size())
    throw Error(ErrorKind::InvalidConfig, "sequence and id counts differ");
  for (const auto& s : sequences_)
    for (const auto& e : s.elements())
      if (e.back() >= dictionary_.size())
        throw Error(ErrorKind::InvalidConfig, "item id outside the dictionary");
}

SequenceDatabase SequenceDatabase::from_raw(const std::vector<RawSequence>& raw,
                                            std::vector<std::string> seq_ids) {
  std::vector<std::string> labels;
  for (const auto& s : raw)
    for (const auto& e : s) labels.insert(labels.end(), e.begin(), e.end());
  Dictionary dict = Dictionary::from_labels(std::move(labels));
  std::vector<Sequence> seqs;
  seqs.reserve(raw.size());
  for (const auto& s : raw) seqs.push_back(canonicalize(s, dict));
  return SequenceDatabase(std::move(dict), std::move(seqs), std::move(seq_ids));
}

std::size_t SequenceDatabase::total_elements() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sequences_) n += s.size();
  return n;
}

double SequenceDatabase::average_elements() const noexcept {
  return sequences_.empty() ? 0.0
                            : static_cast<double>(total_elements()) / static_cast<double>(sequences_.size());
}

Sequence canonicalize(const RawSequence& raw, const Dictionary& dictionary) {
  std::vector<Element> elements;
  elements.reserve(raw.size());
  for (const auto& re : raw) {
    std::vector<ItemId> ids;
    ids.reserve(re.size());
    for (const auto& label : re) ids.push_back(dictionary.id(label));
    elements.push_back(Element::from_items(std::move(ids)));
  }
  return Sequence(std::move(elements));
}

bool contains_subsequence(const Sequence& s, const Sequence& p) noexcept {
  std::size_t j = 0;
  for (const auto& pe : p.elements()) {
    while (j < s.size() && !s[j].includes(pe)) ++j;
    if (j == s.size()) return false;
    ++j;
  }
  return true;
}

bool is_prefix(const Sequence& b, const Sequence& a) noexcept {
  const std::size_t m = b.size();
  if (m == 0) return true;
  if (m > a.size()) return false;
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (b[i] != a[i]) return false;
  const Element& last_b = b[m - 1];
  const Element& last_a = a[m - 1];
  if (!last_a.includes(last_b)) return false;
  for (ItemId item : last_a.items())
    if (!last_b.contains(item) && item < last_b.back()) return false;
  return true;
}

Suffix suffix(const Sequence& a, const Sequence& b) {
  if (b.empty()) return Suffix{std::nullopt, {a.elements().begin(), a.elements().end()}};
  std::size_t j = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    while (j < a.size() && !a[j].includes(b[i])) ++j;
    if (j == a.size()) return {};
    if (i + 1 < b.size()) ++j;
  }
  Suffix out;
  auto items = a[j].items();
  auto after = std::upper_bound(items.begin(), items.end(), b.back().back());
  if (after != items.end()) out.leading_partial.emplace(after, items.end());
  out.rest.assign(a.elements().begin() + static_cast<std::ptrdiff_t>(j + 1), a.elements().end());
  return out;
}

namespace {

void render_items(std::string& out, std::span<const ItemId> items, bool partial,
                  const Dictionary& dict) {
  const bool compact = dict.compact();
  if (compact && !partial && items.size() == 1) {
    out += dict.label(items.front());
    return;
  }
  out += '(';
  if (partial) out += '_';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0 && !compact) out += ',';
    out += dict.label(items[i]);
  }
  out += ')';
}

}  // namespace

std::string render(const Sequence& s, const Dictionary& dictionary) {
  std::string out;
  for (const auto& e : s.elements()) render_items(out, e.items(), false, dictionary);
  return out;
}

std::string render(const Suffix& s, const Dictionary& dictionary) {
  std::string out;
  if (s.leading_partial) render_items(out, *s.leading_partial, true, dictionary);
  for (const auto& e : s.rest) render_items(out, e.items(), false, dictionary);
  return out;
}

std::string render_wrapped(const Sequence& s, const Dictionary& dictionary) {
  return "(" + render(s, dictionary) + ")";
}

std::string render_wrapped(const Suffix& s, const Dictionary& dictionary) {
  return "(" + render(s, dictionary) + ")";
}

RawSequence parse_sequence(std::string_view text, const Dictionary& dictionary) {
  RawSequence out;
  auto fail = [&](const char* why) {
    throw Error(ErrorKind::FormatError, std::string(why) + " in '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(') {
      auto close = text.find(')', i);
      if (close == std::string_view::npos) fail("unbalanced parenthesis");
      std::string_view body = text.substr(i + 1, close - i - 1);
      if (!body.empty() && body.front() == '_') fail("open element in a sequence");
      RawElement element;
      if (dictionary.compact()) {
        for (char c : body) element.emplace_back(1, c);
      } else {
        std::size_t start = 0;
        while (start <= body.size()) {
          auto comma = body.find(',', start);
          if (comma == std::string_view::npos) comma = body.size();
          element.emplace_back(body.substr(start, comma - start));
          start = comma + 1;
        }
      }
      if (element.empty() || (element.size() == 1 && element.front().empty())) fail("empty element");
      out.push_back(std::move(element));
      i = close + 1;
    } else if (dictionary.compact() && text[i] != ')') {
      out.push_back(RawElement{std::string(1, text[i])});
      ++i;
    } else {
      fail("unexpected character");
    }
  }
  return out;
}

}  // namespace seqmine
