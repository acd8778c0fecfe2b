#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqmine/pattern.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

struct DatasetDescriptor {
  std::size_t n_sequences = 0;
  double avg_elements = 0.0;
  std::size_t alphabet_size = 0;
};

DatasetDescriptor describe(const SequenceDatabase& db);

struct BenchResult {
  std::string miner;
  DatasetDescriptor dataset;
  double min_support = 0.0;
  std::uint32_t min_count = 0;
  double wall_ms = 0.0;  // median over repeats
  std::size_t peak_bytes = 0;
  std::size_t pattern_count = 0;
};

struct BenchOptions {
  std::vector<double> supports;  // fractions in (0, 1]
  std::size_t repeats = 3;
  std::optional<std::size_t> max_length;
  Execution exec = Execution::serial;
};

// Runs prefixspan then spam at every support level, one at a time.
std::vector<BenchResult> run_bench(const SequenceDatabase& db, const BenchOptions& options);

// True when both miners report the same pattern count at every support.
bool pattern_counts_agree(const std::vector<BenchResult>& results);

inline constexpr const char* kBenchHeader =
    "miner,n_sequences,avg_elements,alphabet_size,min_support,min_count,median_ms,peak_bytes,patterns";
inline constexpr const char* kComparisonHeader = "min_support,prefixspan_ms,spam_ms,spam_faster,patterns_equal";

void write_bench_csv(std::ostream& os, const std::vector<BenchResult>& results);
// One row per support level pairing the two miners.
void write_comparison_csv(std::ostream& os, const std::vector<BenchResult>& results);
std::string format_bench_table(const std::vector<BenchResult>& results);

}  // namespace seqmine
