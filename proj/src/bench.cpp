#include "seqmine/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "seqmine/prefixspan.hpp"
#include "seqmine/rule_stats.hpp"
#include "seqmine/spam.hpp"

namespace seqmine {

DatasetDescriptor describe(const SequenceDatabase& db) {
  return {db.size(), db.average_elements(), db.dictionary().size()};
}

namespace {

using MinerFn = PatternSet (*)(const SequenceDatabase&, const MinerConfig&, Execution, MineStats*);

BenchResult time_miner(const char* name, MinerFn fn, const SequenceDatabase& db, double support,
                       const BenchOptions& options) {
  MinerConfig cfg;
  cfg.min_support = MinSupport::fraction(support);
  cfg.max_length = options.max_length;
  std::vector<double> times;
  BenchResult r;
  r.miner = name;
  r.dataset = describe(db);
  r.min_support = support;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, options.repeats); ++k) {
    MineStats stats;
    const auto start = std::chrono::steady_clock::now();
    const PatternSet out = fn(db, cfg, options.exec, &stats);
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    r.min_count = out.min_count;
    r.pattern_count = out.size();
    r.peak_bytes = std::max(r.peak_bytes, stats.peak_bytes);
  }
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  r.wall_ms = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  return r;
}

PatternSet run_prefixspan(const SequenceDatabase& db, const MinerConfig& cfg, Execution exec, MineStats* s) {
  return mine(db, cfg, exec, s);
}

PatternSet run_spam(const SequenceDatabase& db, const MinerConfig& cfg, Execution exec, MineStats* s) {
  return mine_spam(db, cfg, exec, s);
}

const BenchResult* find_result(const std::vector<BenchResult>& results, const std::string& miner, double support) {
  for (const auto& r : results)
    if (r.miner == miner && r.min_support == support) return &r;
  return nullptr;
}

std::vector<double> support_levels(const std::vector<BenchResult>& results) {
  std::vector<double> out;
  for (const auto& r : results)
    if (std::find(out.begin(), out.end(), r.min_support) == out.end()) out.push_back(r.min_support);
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::vector<BenchResult> run_bench(const SequenceDatabase& db, const BenchOptions& options) {
  std::vector<BenchResult> out;
  for (double support : options.supports) {
    out.push_back(time_miner("prefixspan", run_prefixspan, db, support, options));
    out.push_back(time_miner("spam", run_spam, db, support, options));
  }
  return out;
}

bool pattern_counts_agree(const std::vector<BenchResult>& results) {
  for (double support : support_levels(results)) {
    const auto* a = find_result(results, "prefixspan", support);
    const auto* b = find_result(results, "spam", support);
    if (a == nullptr || b == nullptr || a->pattern_count != b->pattern_count) return false;
  }
  return true;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchResult>& results) {
  os << kBenchHeader << '\n';
  for (const auto& r : results)
    os << r.miner << ',' << r.dataset.n_sequences << ',' << format_ratio(r.dataset.avg_elements) << ','
       << r.dataset.alphabet_size << ',' << format_ratio(r.min_support) << ',' << r.min_count << ','
       << fmt("%.3f", r.wall_ms) << ',' << r.peak_bytes << ',' << r.pattern_count << '\n';
}

void write_comparison_csv(std::ostream& os, const std::vector<BenchResult>& results) {
  os << kComparisonHeader << '\n';
  for (double support : support_levels(results)) {
    const auto* a = find_result(results, "prefixspan", support);
    const auto* b = find_result(results, "spam", support);
    if (a == nullptr || b == nullptr) continue;
    os << format_ratio(support) << ',' << fmt("%.3f", a->wall_ms) << ',' << fmt("%.3f", b->wall_ms) << ','
       << (b->wall_ms < a->wall_ms ? "true" : "false") << ','
       << (a->pattern_count == b->pattern_count ? "true" : "false") << '\n';
  }
}

std::string format_bench_table(const std::vector<BenchResult>& results) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-11s %11s %10s %12s %14s %10s\n", "miner", "min_support", "min_count",
                "median_ms", "peak_bytes", "patterns");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-11s %11.4f %10u %12.3f %14zu %10zu\n", r.miner.c_str(), r.min_support,
                  r.min_count, r.wall_ms, r.peak_bytes, r.pattern_count);
    os << line;
  }
  return os.str();
}

}  // namespace seqmine
