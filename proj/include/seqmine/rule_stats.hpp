#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqmine/pattern.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

struct SupportStats {
  std::uint32_t count = 0;
  double relative = 0.0;
};

SupportStats pattern_support(const SequenceDatabase& db, const Sequence& p);

// sup(p) / sup(p without its last element). Throws UndefinedConfidence when
// p has fewer than two elements or the antecedent never occurs.
double rule_confidence(const SequenceDatabase& db, const Sequence& p);

// Number of minimal occurrence windows of `p` in `s`: element ranges [i, j]
// that contain p while no narrower range inside them does.
std::uint32_t minimal_occurrences(const Sequence& s, const Sequence& p) noexcept;
// Sum of minimal_occurrences over the database.
std::uint64_t pattern_frequency(const SequenceDatabase& db, const Sequence& p);

enum class SortKey { frequency, support, confidence };

struct RuleRow {
  Pattern pattern;
  std::uint64_t frequency = 0;
  double support = 0.0;
  std::optional<double> confidence;  // absent for single-element patterns
};

struct ReportOptions {
  // Keep only patterns of exactly this many elements; nullopt keeps all.
  std::optional<std::size_t> elements = 3;
  bool singleton_elements = true;
  std::optional<std::size_t> top_k;
  SortKey sort = SortKey::frequency;
};

// Rows sorted by `sort` descending, ties broken by canonical pattern order.
std::vector<RuleRow> build_report(const PatternSet& patterns, const SequenceDatabase& db,
                                  const ReportOptions& options, Execution exec = Execution::serial);

// "Shopping > Field > Nature"; multi-item elements render as "(A + B)".
std::string render_activity_sequence(const Sequence& s, const Dictionary& dictionary);

inline constexpr const char* kReportHeader = "activity_sequence,frequency,support,confidence";
std::string report_csv_row(const RuleRow& row, const Dictionary& dictionary);
void write_report_csv(std::ostream& os, const std::vector<RuleRow>& rows, const Dictionary& dictionary);
void write_report_jsonl(std::ostream& os, const std::vector<RuleRow>& rows, const Dictionary& dictionary);

inline constexpr const char* kPatternHeader = "pattern,support_count,relative_support";
void write_patterns_csv(std::ostream& os, const PatternSet& patterns, const Dictionary& dictionary);
void write_patterns_jsonl(std::ostream& os, const PatternSet& patterns, const Dictionary& dictionary);

// Fixed six-decimal rendering used by both CSV outputs.
std::string format_ratio(double v);

std::optional<SortKey> parse_sort_key(std::string_view s);

}  // namespace seqmine
