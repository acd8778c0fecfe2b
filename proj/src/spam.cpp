#include "seqmine/spam.hpp"

#include <algorithm>
#include <bit>

#include "seqmine/error.hpp"

namespace seqmine {

namespace {

constexpr std::uint64_t kAllOnes = ~std::uint64_t{0};

constexpr std::uint64_t slot_mask(std::uint32_t width) noexcept {
  return width >= 64 ? kAllOnes : (std::uint64_t{1} << width) - 1;
}

// Bits of `mask` strictly above the lowest set bit of `v`; `v` must be
// non-zero.
constexpr std::uint64_t above_lowest(std::uint64_t v, std::uint64_t mask) noexcept {
  const std::uint64_t low = v & (~v + 1);
  return mask & ~(low | (low - 1));
}

std::uint64_t s_transform_word(std::uint64_t x, std::uint32_t width) noexcept {
  const std::uint64_t base = slot_mask(width);
  std::uint64_t r = 0;
  for (std::uint32_t shift = 0; shift < 64 && x != 0; shift += width) {
    const std::uint64_t m = base << shift;
    const std::uint64_t v = x & m;
    if (v != 0) r |= above_lowest(v, m);
    x &= ~m;
  }
  return r;
}

void s_transform_wide_slot(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) noexcept {
  std::size_t k = 0;
  for (; k < in.size() && in[k] == 0; ++k) out[k] = 0;
  if (k == in.size()) return;
  out[k] = above_lowest(in[k], kAllOnes);
  for (++k; k < in.size(); ++k) out[k] = kAllOnes;
}

std::uint32_t count_word_slots(std::uint64_t x, std::uint32_t width) noexcept {
  const std::uint64_t base = slot_mask(width);
  std::uint32_t n = 0;
  for (std::uint32_t shift = 0; shift < 64 && x != 0; shift += width) {
    if ((x & (base << shift)) != 0) ++n;
    x &= ~(base << shift);
  }
  return n;
}

std::uint32_t words_per_slot(const LaneTier& t) noexcept { return t.width_bits / 64; }

}  // namespace

VerticalBitmapIndex VerticalBitmapIndex::build(const SequenceDatabase& db, std::uint32_t max_lane_bits) {
  if (max_lane_bits < kMinLaneBits || !std::has_single_bit(max_lane_bits))
    throw Error(ErrorKind::InvalidConfig, "max lane width must be a power of two >= 8");

  VerticalBitmapIndex index;
  std::vector<std::vector<std::uint32_t>> by_width;  // tier k has width 8 << k
  for (std::uint32_t w = kMinLaneBits; w <= max_lane_bits; w <<= 1) by_width.emplace_back();

  for (std::size_t i = 0; i < db.size(); ++i) {
    const std::size_t len = db[i].size();
    if (len > max_lane_bits)
      throw Error(ErrorKind::CapacityExceeded, "sequence " + std::to_string(i) + " has " + std::to_string(len) +
                                                   " elements; lane capacity is " + std::to_string(max_lane_bits));
    std::uint32_t width = std::max<std::uint32_t>(kMinLaneBits, std::bit_ceil(static_cast<std::uint32_t>(len)));
    by_width[static_cast<std::size_t>(std::countr_zero(width) - std::countr_zero(kMinLaneBits))].push_back(
        static_cast<std::uint32_t>(i));
  }

  index.slots_.resize(db.size());
  std::size_t word = 0;
  for (std::size_t k = 0; k < by_width.size(); ++k) {
    if (by_width[k].empty()) continue;
    LaneTier tier;
    tier.width_bits = kMinLaneBits << k;
    tier.first_word = word;
    tier.seq_indices = std::move(by_width[k]);
    const std::size_t n = tier.seq_indices.size();
    tier.word_count = tier.width_bits < 64 ? (n * tier.width_bits + 63) / 64 : n * (tier.width_bits / 64);
    word += tier.word_count;
    for (std::size_t slot = 0; slot < n; ++slot)
      index.slots_[tier.seq_indices[slot]] = {static_cast<std::uint32_t>(index.tiers_.size()),
                                              static_cast<std::uint32_t>(slot)};
    index.tiers_.push_back(std::move(tier));
  }
  index.word_count_ = word;

  index.items_.assign(db.dictionary().size(), Bitmap(word, 0));
  for (std::size_t i = 0; i < db.size(); ++i) {
    const SlotRef ref = index.slots_[i];
    const LaneTier& tier = index.tiers_[ref.tier];
    const std::size_t bit0 = tier.first_word * 64 + static_cast<std::size_t>(ref.slot) * tier.width_bits;
    const Sequence& s = db[i];
    for (std::size_t j = 0; j < s.size(); ++j)
      for (ItemId item : s[j].items()) {
        const std::size_t bit = bit0 + j;
        index.items_[item][bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
  }
  return index;
}

bool VerticalBitmapIndex::test(const Bitmap& bitmap, std::uint32_t seq, std::uint32_t position) const noexcept {
  if (seq >= slots_.size()) return false;
  const SlotRef ref = slots_[seq];
  const LaneTier& tier = tiers_[ref.tier];
  if (position >= tier.width_bits) return false;
  const std::size_t bit = tier.first_word * 64 + static_cast<std::size_t>(ref.slot) * tier.width_bits + position;
  return (bitmap[bit / 64] >> (bit % 64)) & 1U;
}

std::uint32_t VerticalBitmapIndex::support(const Bitmap& bitmap) const noexcept {
  return kernels::support_serial(*this, bitmap);
}

namespace kernels {

void s_transform_serial(const VerticalBitmapIndex& index, std::span<const std::uint64_t> in,
                        std::span<std::uint64_t> out) {
  for (const auto& tier : index.tiers()) {
    if (tier.width_bits <= 64) {
      for (std::size_t w = tier.first_word; w < tier.first_word + tier.word_count; ++w)
        out[w] = s_transform_word(in[w], tier.width_bits);
    } else {
      const std::size_t wps = words_per_slot(tier);
      for (std::size_t slot = 0; slot < tier.seq_indices.size(); ++slot) {
        const std::size_t w0 = tier.first_word + slot * wps;
        s_transform_wide_slot(in.subspan(w0, wps), out.subspan(w0, wps));
      }
    }
  }
}

void s_transform_omp(const VerticalBitmapIndex& index, std::span<const std::uint64_t> in,
                     std::span<std::uint64_t> out) {
  for (const auto& tier : index.tiers()) {
    if (tier.width_bits <= 64) {
      const auto first = static_cast<std::ptrdiff_t>(tier.first_word);
      const auto last = first + static_cast<std::ptrdiff_t>(tier.word_count);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t w = first; w < last; ++w)
        out[static_cast<std::size_t>(w)] = s_transform_word(in[static_cast<std::size_t>(w)], tier.width_bits);
    } else {
      const std::size_t wps = words_per_slot(tier);
      const auto slots = static_cast<std::ptrdiff_t>(tier.seq_indices.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t slot = 0; slot < slots; ++slot) {
        const std::size_t w0 = tier.first_word + static_cast<std::size_t>(slot) * wps;
        s_transform_wide_slot(in.subspan(w0, wps), out.subspan(w0, wps));
      }
    }
  }
}

void and_into_serial(std::span<std::uint64_t> acc, std::span<const std::uint64_t> other) {
  for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= other[w];
}

void and_into_omp(std::span<std::uint64_t> acc, std::span<const std::uint64_t> other) {
  const auto n = static_cast<std::ptrdiff_t>(acc.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t w = 0; w < n; ++w) acc[static_cast<std::size_t>(w)] &= other[static_cast<std::size_t>(w)];
}

std::uint32_t support_serial(const VerticalBitmapIndex& index, std::span<const std::uint64_t> bits) {
  std::uint32_t total = 0;
  for (const auto& tier : index.tiers()) {
    if (tier.width_bits <= 64) {
      for (std::size_t w = tier.first_word; w < tier.first_word + tier.word_count; ++w)
        total += count_word_slots(bits[w], tier.width_bits);
    } else {
      const std::size_t wps = words_per_slot(tier);
      for (std::size_t slot = 0; slot < tier.seq_indices.size(); ++slot) {
        auto words = bits.subspan(tier.first_word + slot * wps, wps);
        if (std::any_of(words.begin(), words.end(), [](std::uint64_t x) { return x != 0; })) ++total;
      }
    }
  }
  return total;
}

std::uint32_t support_omp(const VerticalBitmapIndex& index, std::span<const std::uint64_t> bits) {
  std::uint32_t total = 0;
  for (const auto& tier : index.tiers()) {
    if (tier.width_bits <= 64) {
      const auto first = static_cast<std::ptrdiff_t>(tier.first_word);
      const auto last = first + static_cast<std::ptrdiff_t>(tier.word_count);
#pragma omp parallel for schedule(static) reduction(+ : total)
      for (std::ptrdiff_t w = first; w < last; ++w)
        total += count_word_slots(bits[static_cast<std::size_t>(w)], tier.width_bits);
    } else {
      const std::size_t wps = words_per_slot(tier);
      const auto slots = static_cast<std::ptrdiff_t>(tier.seq_indices.size());
#pragma omp parallel for schedule(static) reduction(+ : total)
      for (std::ptrdiff_t slot = 0; slot < slots; ++slot) {
        auto words = bits.subspan(tier.first_word + static_cast<std::size_t>(slot) * wps, wps);
        if (std::any_of(words.begin(), words.end(), [](std::uint64_t x) { return x != 0; })) ++total;
      }
    }
  }
  return total;
}

}  // namespace kernels

StepResult s_step(const VerticalBitmapIndex& index, const Bitmap& pattern, ItemId item, Execution exec) {
  StepResult r;
  r.bitmap.resize(index.word_count());
  const Bitmap& item_bits = index.item_bitmap(item);
  if (exec == Execution::parallel) {
    kernels::s_transform_omp(index, pattern, r.bitmap);
    kernels::and_into_omp(r.bitmap, item_bits);
    r.count = kernels::support_omp(index, r.bitmap);
  } else {
    kernels::s_transform_serial(index, pattern, r.bitmap);
    kernels::and_into_serial(r.bitmap, item_bits);
    r.count = kernels::support_serial(index, r.bitmap);
  }
  return r;
}

StepResult i_step(const VerticalBitmapIndex& index, const Bitmap& pattern, ItemId item, Execution exec) {
  StepResult r;
  r.bitmap = pattern;
  const Bitmap& item_bits = index.item_bitmap(item);
  if (exec == Execution::parallel) {
    kernels::and_into_omp(r.bitmap, item_bits);
    r.count = kernels::support_omp(index, r.bitmap);
  } else {
    kernels::and_into_serial(r.bitmap, item_bits);
    r.count = kernels::support_serial(index, r.bitmap);
  }
  return r;
}

namespace {

// Depth-first search with candidate pruning: a node's S-candidates are its
// parent's frequent S-extensions, and its I-candidates are the parent's
// frequent extensions of the same kind that sort after the new item.
class SpamGrower {
 public:
  SpamGrower(const VerticalBitmapIndex& index, const MinerConfig& cfg, std::uint32_t min_count,
             std::vector<Pattern>& out)
      : index_(index),
        min_count_(min_count),
        max_length_(cfg.max_length),
        min_report_(cfg.min_pattern_length.value_or(1)),
        out_(out) {}

  void visit(const Sequence& prefix, const Bitmap& bits, std::uint32_t count, std::span<const ItemId> s_cands,
             std::span<const ItemId> i_cands) {
    ++nodes_;
    const std::size_t length = prefix.item_count();
    if (length >= min_report_) out_.push_back(Pattern{prefix, count});
    if (max_length_ && length >= *max_length_) return;

    const std::size_t bitmap_bytes = index_.word_count() * sizeof(std::uint64_t);
    std::vector<ItemId> s_items, i_items;
    std::vector<StepResult> s_results, i_results;
    for (ItemId item : s_cands) {
      auto r = s_step(index_, bits, item);
      if (r.count >= min_count_) {
        s_items.push_back(item);
        s_results.push_back(std::move(r));
      }
    }
    for (ItemId item : i_cands) {
      auto r = i_step(index_, bits, item);
      if (r.count >= min_count_) {
        i_items.push_back(item);
        i_results.push_back(std::move(r));
      }
    }
    const std::size_t held = (s_results.size() + i_results.size()) * bitmap_bytes;
    live_bytes_ += held;
    peak_bytes_ = std::max(peak_bytes_, live_bytes_);

    for (std::size_t k = 0; k < s_items.size(); ++k) {
      std::span<const ItemId> later(s_items.begin() + static_cast<std::ptrdiff_t>(k + 1), s_items.end());
      visit(prefix.with_s_extension(s_items[k]), s_results[k].bitmap, s_results[k].count, s_items, later);
    }
    for (std::size_t k = 0; k < i_items.size(); ++k) {
      std::span<const ItemId> later(i_items.begin() + static_cast<std::ptrdiff_t>(k + 1), i_items.end());
      visit(prefix.with_i_extension(i_items[k]), i_results[k].bitmap, i_results[k].count, s_items, later);
    }
    live_bytes_ -= held;
  }

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t peak_bytes() const noexcept { return peak_bytes_; }

 private:
  const VerticalBitmapIndex& index_;
  std::uint32_t min_count_;
  std::optional<std::size_t> max_length_;
  std::size_t min_report_;
  std::vector<Pattern>& out_;
  std::size_t nodes_ = 0;
  std::size_t live_bytes_ = 0;
  std::size_t peak_bytes_ = 0;
};

}  // namespace

PatternSet mine_spam(const SequenceDatabase& db, const MinerConfig& cfg, Execution exec, MineStats* stats) {
  cfg.validate();
  PatternSet result;
  result.db_size = db.size();
  result.min_count = cfg.min_support.resolve(db.size());

  const auto index = VerticalBitmapIndex::build(db);
  std::vector<ItemId> frequent;
  std::vector<std::uint32_t> counts;
  for (ItemId item = 0; item < index.alphabet_size(); ++item) {
    auto c = index.support(index.item_bitmap(item));
    if (c >= result.min_count) {
      frequent.push_back(item);
      counts.push_back(c);
    }
  }

  std::vector<std::vector<Pattern>> branches(frequent.size());
  std::vector<MineStats> branch_stats(frequent.size());
  auto run_branch = [&](std::size_t k) {
    SpamGrower grower(index, cfg, result.min_count, branches[k]);
    std::span<const ItemId> later(frequent.begin() + static_cast<std::ptrdiff_t>(k + 1), frequent.end());
    grower.visit(Sequence{}.with_s_extension(frequent[k]), index.item_bitmap(frequent[k]), counts[k], frequent,
                 later);
    branch_stats[k] = {grower.peak_bytes(), grower.nodes()};
  };

  const auto n = static_cast<std::ptrdiff_t>(frequent.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) run_branch(static_cast<std::size_t>(k));
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k) run_branch(static_cast<std::size_t>(k));
  }

  for (auto& b : branches) std::move(b.begin(), b.end(), std::back_inserter(result.patterns));
  normalize(result.patterns);

  if (stats != nullptr) {
    MineStats s;
    s.peak_bytes = index.bytes();
    std::size_t branch_peak = 0;
    for (const auto& b : branch_stats) {
      branch_peak = std::max(branch_peak, b.peak_bytes);
      s.nodes += b.nodes;
    }
    s.peak_bytes += branch_peak;
    *stats = s;
  }
  return result;
}

}  // namespace seqmine
