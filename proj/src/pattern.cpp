#include "seqmine/pattern.hpp"

#include <algorithm>
#include <cmath>

#include "seqmine/error.hpp"

namespace seqmine {

double MinSupport::value() const noexcept {
  if (const auto* f = std::get_if<double>(&value_)) return *f;
  return static_cast<double>(std::get<std::int64_t>(value_));
}

std::uint32_t MinSupport::resolve(std::size_t db_size) const {
  if (const auto* f = std::get_if<double>(&value_)) {
    if (!(*f > 0.0 && *f <= 1.0))
      throw Error(ErrorKind::InvalidConfig, "min-support fraction must be in (0,1]");
    // 1e-9 absorbs representation error such as 0.07 * 100 = 7.000000000000001.
    double scaled = std::ceil(*f * static_cast<double>(db_size) - 1e-9);
    return static_cast<std::uint32_t>(std::max(1.0, scaled));
  }
  auto n = std::get<std::int64_t>(value_);
  if (n < 1) throw Error(ErrorKind::InvalidConfig, "min-support count must be at least 1");
  if (n > static_cast<std::int64_t>(UINT32_MAX))
    throw Error(ErrorKind::InvalidConfig, "min-support count too large");
  return static_cast<std::uint32_t>(n);
}

void MinerConfig::validate() const {
  min_support.resolve(1);
  if (max_length && *max_length < 1) throw Error(ErrorKind::InvalidConfig, "max-length must be at least 1");
}

const Pattern* PatternSet::find(const Sequence& s) const noexcept {
  auto it = std::lower_bound(patterns.begin(), patterns.end(), s,
                             [](const Pattern& p, const Sequence& x) { return p.sequence < x; });
  if (it == patterns.end() || it->sequence != s) return nullptr;
  return &*it;
}

void normalize(std::vector<Pattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(),
            [](const Pattern& a, const Pattern& b) { return a.sequence < b.sequence; });
}

}  // namespace seqmine
