#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqmine/pattern.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

using Bitmap = std::vector<std::uint64_t>;

// Sequences of similar length share a lane width. Each sequence owns a
// `width_bits` slot; slot bit j is element position j. Narrow lanes pack
// 64 / width slots per word, wide lanes span width / 64 words.
struct LaneTier {
  std::uint32_t width_bits = 0;
  std::size_t first_word = 0;
  std::size_t word_count = 0;
  std::vector<std::uint32_t> seq_indices;  // slot -> sequence
};

struct SlotRef {
  std::uint32_t tier = 0;
  std::uint32_t slot = 0;
};

class VerticalBitmapIndex {
 public:
  static constexpr std::uint32_t kMinLaneBits = 8;
  static constexpr std::uint32_t kDefaultMaxLaneBits = 4096;

  // Throws CapacityExceeded when a sequence has more elements than
  // `max_lane_bits`, and InvalidConfig when `max_lane_bits` is not a power
  // of two >= kMinLaneBits.
  static VerticalBitmapIndex build(const SequenceDatabase& db,
                                   std::uint32_t max_lane_bits = kDefaultMaxLaneBits);

  std::size_t word_count() const noexcept { return word_count_; }
  std::size_t sequence_count() const noexcept { return slots_.size(); }
  std::span<const LaneTier> tiers() const noexcept { return tiers_; }
  const Bitmap& item_bitmap(ItemId item) const { return items_.at(item); }
  std::size_t alphabet_size() const noexcept { return items_.size(); }
  std::size_t bytes() const noexcept { return items_.size() * word_count_ * sizeof(std::uint64_t); }

  bool test(const Bitmap& bitmap, std::uint32_t seq, std::uint32_t position) const noexcept;
  // Sequences with at least one set bit.
  std::uint32_t support(const Bitmap& bitmap) const noexcept;

 private:
  std::size_t word_count_ = 0;
  std::vector<LaneTier> tiers_;
  std::vector<SlotRef> slots_;  // sequence -> slot
  std::vector<Bitmap> items_;
};

struct StepResult {
  Bitmap bitmap;
  std::uint32_t count = 0;
};

// Keep, per sequence, only positions strictly after the first set bit, then
// AND with the item's bitmap.
StepResult s_step(const VerticalBitmapIndex& index, const Bitmap& pattern, ItemId item,
                  Execution exec = Execution::serial);
// Positions where the pattern's last element and `item` co-occur.
StepResult i_step(const VerticalBitmapIndex& index, const Bitmap& pattern, ItemId item,
                  Execution exec = Execution::serial);

// Same contract and output order as mine().
PatternSet mine_spam(const SequenceDatabase& db, const MinerConfig& cfg,
                     Execution exec = Execution::serial, MineStats* stats = nullptr);

namespace kernels {

// Word-level building blocks. The _serial forms are the reference; the _omp
// forms split the word range across threads and must match bit for bit.
void s_transform_serial(const VerticalBitmapIndex& index, std::span<const std::uint64_t> in,
                        std::span<std::uint64_t> out);
void s_transform_omp(const VerticalBitmapIndex& index, std::span<const std::uint64_t> in,
                     std::span<std::uint64_t> out);
void and_into_serial(std::span<std::uint64_t> acc, std::span<const std::uint64_t> other);
void and_into_omp(std::span<std::uint64_t> acc, std::span<const std::uint64_t> other);
std::uint32_t support_serial(const VerticalBitmapIndex& index, std::span<const std::uint64_t> bits);
std::uint32_t support_omp(const VerticalBitmapIndex& index, std::span<const std::uint64_t> bits);

}  // namespace kernels

}  // namespace seqmine
