#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "seqmine/pattern.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

// One pseudo-projected suffix: the suffix starts at element `elem_offset` of
// sequence `seq_index`. When `open_element` is set it starts inside that
// element at `item_offset` (the "_" case); otherwise it starts with the
// whole element and `item_offset` is 0.
struct ProjectionEntry {
  std::uint32_t seq_index = 0;
  std::uint32_t elem_offset = 0;
  std::uint32_t item_offset = 0;
  bool open_element = false;

  bool operator==(const ProjectionEntry&) const = default;
};

class ProjectedDatabase {
 public:
  // Projection on the empty prefix: one closed entry per non-empty sequence.
  static ProjectedDatabase initial(const SequenceDatabase& db);

  ProjectedDatabase(const SequenceDatabase& base, Sequence prefix, std::vector<ProjectionEntry> entries)
      : base_(base), prefix_(std::move(prefix)), entries_(std::move(entries)) {}

  const SequenceDatabase& base() const noexcept { return base_.get(); }
  const Sequence& prefix() const noexcept { return prefix_; }
  std::span<const ProjectionEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Suffix suffix_of(const ProjectionEntry& entry) const;
  std::vector<Suffix> suffixes() const;

 private:
  std::reference_wrapper<const SequenceDatabase> base_;
  Sequence prefix_;
  std::vector<ProjectionEntry> entries_;
};

enum class ExtensionKind { S, I };

struct Extension {
  ItemId item = 0;
  ExtensionKind kind = ExtensionKind::S;
  std::uint32_t count = 0;

  bool operator==(const Extension&) const = default;
};

struct ItemCount {
  ItemId item = 0;
  std::uint32_t count = 0;

  bool operator==(const ItemCount&) const = default;
};

// Items contained in at least `min_count` distinct sequences, by item id.
std::vector<ItemCount> frequent_items(const SequenceDatabase& db, std::uint32_t min_count);

// Advances every entry past the earliest occurrence of `ext.item` and drops
// entries whose suffix becomes empty or has no occurrence.
ProjectedDatabase project(const ProjectedDatabase& pdb, const Extension& ext);

// S- and I-extensions with projected support >= min_count. I-extensions come
// first, each group ordered by item id.
std::vector<Extension> frequent_extensions(const ProjectedDatabase& pdb, std::uint32_t min_count);

// Complete set of frequent sequential patterns by recursive prefix growth.
PatternSet mine(const SequenceDatabase& db, const MinerConfig& cfg,
                Execution exec = Execution::serial, MineStats* stats = nullptr);

}  // namespace seqmine
