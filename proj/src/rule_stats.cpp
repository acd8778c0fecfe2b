#include "seqmine/rule_stats.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "seqmine/csv.hpp"
#include "seqmine/error.hpp"

namespace seqmine {

SupportStats pattern_support(const SequenceDatabase& db, const Sequence& p) {
  SupportStats out;
  for (const auto& s : db.sequences())
    if (contains_subsequence(s, p)) ++out.count;
  out.relative = db.empty() ? 0.0 : static_cast<double>(out.count) / static_cast<double>(db.size());
  return out;
}

double rule_confidence(const SequenceDatabase& db, const Sequence& p) {
  if (p.size() < 2) throw Error(ErrorKind::UndefinedConfidence, "confidence needs a pattern of at least two elements");
  const auto antecedent = pattern_support(db, p.without_last_element());
  if (antecedent.count == 0) throw Error(ErrorKind::UndefinedConfidence, "antecedent has zero support");
  return static_cast<double>(pattern_support(db, p).count) / static_cast<double>(antecedent.count);
}

std::uint32_t minimal_occurrences(const Sequence& s, const Sequence& p) noexcept {
  if (p.empty()) return 0;
  // Earliest end reachable from each start is non-decreasing in the start,
  // so every distinct end value is one minimal window (its latest start).
  std::uint32_t windows = 0;
  std::size_t previous_end = s.size();
  for (std::size_t start = 0; start < s.size(); ++start) {
    if (!s[start].includes(p[0])) continue;
    std::size_t j = start;
    bool matched = true;
    for (std::size_t i = 1; i < p.size(); ++i) {
      ++j;
      while (j < s.size() && !s[j].includes(p[i])) ++j;
      if (j == s.size()) {
        matched = false;
        break;
      }
    }
    if (!matched) break;
    if (j != previous_end) ++windows;
    previous_end = j;
  }
  return windows;
}

std::uint64_t pattern_frequency(const SequenceDatabase& db, const Sequence& p) {
  std::uint64_t total = 0;
  for (const auto& s : db.sequences()) total += minimal_occurrences(s, p);
  return total;
}

namespace {

bool keep(const Sequence& s, const ReportOptions& o) {
  if (o.elements && s.size() != *o.elements) return false;
  if (o.singleton_elements)
    for (const auto& e : s.elements())
      if (e.size() != 1) return false;
  return true;
}

double sort_value(const RuleRow& r, SortKey key) {
  switch (key) {
    case SortKey::frequency: return static_cast<double>(r.frequency);
    case SortKey::support: return r.support;
    case SortKey::confidence: return r.confidence.value_or(-1.0);
  }
  return 0.0;
}

}  // namespace

std::vector<RuleRow> build_report(const PatternSet& patterns, const SequenceDatabase& db,
                                  const ReportOptions& options, Execution exec) {
  std::vector<const Pattern*> selected;
  for (const auto& p : patterns.patterns)
    if (keep(p.sequence, options)) selected.push_back(&p);

  std::vector<RuleRow> rows(selected.size());
  auto fill = [&](std::size_t i) {
    const Pattern& p = *selected[i];
    RuleRow& row = rows[i];
    row.pattern = p;
    row.frequency = pattern_frequency(db, p.sequence);
    row.support = db.empty() ? 0.0 : static_cast<double>(p.support_count) / static_cast<double>(db.size());
    if (p.sequence.size() >= 2) {
      const Sequence antecedent = p.sequence.without_last_element();
      const Pattern* known = patterns.find(antecedent);
      const std::uint32_t denom = known ? known->support_count : pattern_support(db, antecedent).count;
      if (denom > 0) row.confidence = static_cast<double>(p.support_count) / static_cast<double>(denom);
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) fill(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) fill(static_cast<std::size_t>(i));
  }

  std::stable_sort(rows.begin(), rows.end(), [&](const RuleRow& a, const RuleRow& b) {
    const double va = sort_value(a, options.sort);
    const double vb = sort_value(b, options.sort);
    if (va != vb) return va > vb;
    return a.pattern.sequence < b.pattern.sequence;
  });
  if (options.top_k && rows.size() > *options.top_k) rows.resize(*options.top_k);
  return rows;
}

std::string render_activity_sequence(const Sequence& s, const Dictionary& dictionary) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += " > ";
    auto items = s[i].items();
    if (items.size() == 1) {
      out += dictionary.label(items.front());
      continue;
    }
    out += '(';
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (k > 0) out += " + ";
      out += dictionary.label(items[k]);
    }
    out += ')';
  }
  return out;
}

std::string format_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string report_csv_row(const RuleRow& row, const Dictionary& dictionary) {
  std::string out = csv_field(render_activity_sequence(row.pattern.sequence, dictionary));
  out += ',';
  out += std::to_string(row.frequency);
  out += ',';
  out += format_ratio(row.support);
  out += ',';
  if (row.confidence) out += format_ratio(*row.confidence);
  return out;
}

void write_report_csv(std::ostream& os, const std::vector<RuleRow>& rows, const Dictionary& dictionary) {
  os << kReportHeader << '\n';
  for (const auto& r : rows) os << report_csv_row(r, dictionary) << '\n';
}

void write_report_jsonl(std::ostream& os, const std::vector<RuleRow>& rows, const Dictionary& dictionary) {
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["activity_sequence"] = render_activity_sequence(r.pattern.sequence, dictionary);
    j["frequency"] = r.frequency;
    j["support_count"] = r.pattern.support_count;
    j["support"] = r.support;
    j["confidence"] = r.confidence ? nlohmann::ordered_json(*r.confidence) : nlohmann::ordered_json(nullptr);
    os << j.dump() << '\n';
  }
}

void write_patterns_csv(std::ostream& os, const PatternSet& patterns, const Dictionary& dictionary) {
  os << kPatternHeader << '\n';
  for (const auto& p : patterns.patterns)
    os << csv_field(render(p.sequence, dictionary)) << ',' << p.support_count << ','
       << format_ratio(patterns.relative_support(p)) << '\n';
}

void write_patterns_jsonl(std::ostream& os, const PatternSet& patterns, const Dictionary& dictionary) {
  for (const auto& p : patterns.patterns) {
    nlohmann::ordered_json elements = nlohmann::ordered_json::array();
    for (const auto& e : p.sequence.elements()) {
      nlohmann::ordered_json items = nlohmann::ordered_json::array();
      for (ItemId id : e.items()) items.push_back(dictionary.label(id));
      elements.push_back(std::move(items));
    }
    nlohmann::ordered_json j;
    j["pattern"] = render(p.sequence, dictionary);
    j["elements"] = std::move(elements);
    j["support_count"] = p.support_count;
    j["relative_support"] = patterns.relative_support(p);
    os << j.dump() << '\n';
  }
}

std::optional<SortKey> parse_sort_key(std::string_view s) {
  if (s == "frequency") return SortKey::frequency;
  if (s == "support") return SortKey::support;
  if (s == "confidence") return SortKey::confidence;
  return std::nullopt;
}

}  // namespace seqmine
