#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "seqmine/sequence.hpp"

namespace seqmine {

// Serial runs the reference kernels on one thread. Parallel fans out over
// first-level items with OpenMP and must produce identical output.
enum class Execution { serial, parallel };

// Absolute sequence count or a fraction of the database size.
class MinSupport {
 public:
  static MinSupport count(std::int64_t n) { return MinSupport(n); }
  static MinSupport fraction(double f) { return MinSupport(f); }

  bool is_fraction() const noexcept { return std::holds_alternative<double>(value_); }
  double value() const noexcept;

  // ceil(fraction * db_size) for fractions. Throws InvalidConfig for counts
  // below 1 or fractions outside (0, 1].
  std::uint32_t resolve(std::size_t db_size) const;

 private:
  explicit MinSupport(std::int64_t n) : value_(n) {}
  explicit MinSupport(double f) : value_(f) {}
  std::variant<std::int64_t, double> value_;
};

struct MinerConfig {
  MinSupport min_support = MinSupport::count(1);
  // Cap on the total number of items in a pattern.
  std::optional<std::size_t> max_length;
  // Patterns with fewer items are mined through but not reported.
  std::optional<std::size_t> min_pattern_length;

  void validate() const;
};

struct Pattern {
  Sequence sequence;
  std::uint32_t support_count = 0;

  bool operator==(const Pattern&) const = default;
};

struct PatternSet {
  std::vector<Pattern> patterns;  // sorted by sequence
  std::size_t db_size = 0;
  std::uint32_t min_count = 0;

  std::size_t size() const noexcept { return patterns.size(); }
  bool empty() const noexcept { return patterns.empty(); }
  const Pattern* find(const Sequence& s) const noexcept;
  double relative_support(const Pattern& p) const noexcept {
    return db_size == 0 ? 0.0 : static_cast<double>(p.support_count) / static_cast<double>(db_size);
  }
};

// Rough working-set figures reported by the miners for benchmarking.
struct MineStats {
  std::size_t peak_bytes = 0;
  std::size_t nodes = 0;
};

// Sorts into canonical order; shared by both miners.
void normalize(std::vector<Pattern>& patterns);

}  // namespace seqmine
