#include "seqmine/prefixspan.hpp"

#include <algorithm>

#include "seqmine/error.hpp"

namespace seqmine {

namespace {

// Position of `item` in `items` at or after `from`, or -1.
std::ptrdiff_t find_item(std::span<const ItemId> items, std::size_t from, ItemId item) noexcept {
  auto first = items.begin() + static_cast<std::ptrdiff_t>(from);
  auto it = std::lower_bound(first, items.end(), item);
  if (it == items.end() || *it != item) return -1;
  return it - items.begin();
}

// First element index of the suffix that may hold a new element.
std::uint32_t s_start(const ProjectionEntry& e) noexcept {
  return e.open_element ? e.elem_offset + 1 : e.elem_offset;
}

// Entry for a suffix that begins right after item `pos` of element `q`.
std::optional<ProjectionEntry> advance(const Sequence& s, std::uint32_t seq_index, std::size_t q,
                                       std::size_t pos) noexcept {
  if (pos + 1 < s[q].size())
    return ProjectionEntry{seq_index, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(pos + 1), true};
  if (q + 1 < s.size()) return ProjectionEntry{seq_index, static_cast<std::uint32_t>(q + 1), 0, false};
  return std::nullopt;
}

std::optional<ProjectionEntry> project_entry(const Sequence& s, const ProjectionEntry& e,
                                             const Sequence& prefix, const Extension& ext) noexcept {
  if (ext.kind == ExtensionKind::S) {
    for (std::size_t q = s_start(e); q < s.size(); ++q) {
      auto pos = find_item(s[q].items(), 0, ext.item);
      if (pos >= 0) return advance(s, e.seq_index, q, static_cast<std::size_t>(pos));
    }
    return std::nullopt;
  }
  if (e.open_element) {
    auto pos = find_item(s[e.elem_offset].items(), e.item_offset, ext.item);
    if (pos >= 0) return advance(s, e.seq_index, e.elem_offset, static_cast<std::size_t>(pos));
  }
  const Element& last = prefix.back();
  for (std::size_t q = s_start(e); q < s.size(); ++q) {
    if (!s[q].includes(last)) continue;
    auto pos = find_item(s[q].items(), 0, ext.item);
    if (pos >= 0) return advance(s, e.seq_index, q, static_cast<std::size_t>(pos));
  }
  return std::nullopt;
}

// Per-worker counting buffers indexed by item id. A stamp records the last
// entry that counted an item so each sequence contributes at most once.
struct Scratch {
  std::vector<std::uint32_t> s_count, i_count, s_stamp, i_stamp;
  std::vector<ItemId> s_touched, i_touched;

  explicit Scratch(std::size_t alphabet)
      : s_count(alphabet), i_count(alphabet), s_stamp(alphabet), i_stamp(alphabet) {}
};

std::vector<Extension> collect_extensions(const ProjectedDatabase& pdb, std::uint32_t min_count,
                                          Scratch& sc) {
  const auto& db = pdb.base();
  const Sequence& prefix = pdb.prefix();
  const Element* last = prefix.empty() ? nullptr : &prefix.back();
  sc.s_touched.clear();
  sc.i_touched.clear();

  auto bump = [](std::vector<std::uint32_t>& count, std::vector<std::uint32_t>& stamp,
                 std::vector<ItemId>& touched, ItemId item, std::uint32_t mark) {
    if (stamp[item] == mark) return;
    if (count[item] == 0) touched.push_back(item);
    stamp[item] = mark;
    ++count[item];
  };

  std::uint32_t mark = 0;
  for (const auto& e : pdb.entries()) {
    ++mark;
    const Sequence& s = db[e.seq_index];
    if (e.open_element) {
      auto items = s[e.elem_offset].items();
      for (std::size_t k = e.item_offset; k < items.size(); ++k)
        bump(sc.i_count, sc.i_stamp, sc.i_touched, items[k], mark);
    }
    for (std::size_t q = s_start(e); q < s.size(); ++q) {
      auto items = s[q].items();
      for (ItemId item : items) bump(sc.s_count, sc.s_stamp, sc.s_touched, item, mark);
      if (last != nullptr && s[q].includes(*last)) {
        auto after = std::upper_bound(items.begin(), items.end(), last->back());
        for (; after != items.end(); ++after) bump(sc.i_count, sc.i_stamp, sc.i_touched, *after, mark);
      }
    }
  }

  std::vector<Extension> out;
  auto drain = [&](std::vector<std::uint32_t>& count, std::vector<std::uint32_t>& stamp,
                   std::vector<ItemId>& touched, ExtensionKind kind) {
    std::sort(touched.begin(), touched.end());
    for (ItemId item : touched) {
      if (count[item] >= min_count) out.push_back({item, kind, count[item]});
      count[item] = 0;
      stamp[item] = 0;
    }
  };
  drain(sc.i_count, sc.i_stamp, sc.i_touched, ExtensionKind::I);
  drain(sc.s_count, sc.s_stamp, sc.s_touched, ExtensionKind::S);
  return out;
}

Sequence extend(const Sequence& prefix, const Extension& ext) {
  return ext.kind == ExtensionKind::S ? prefix.with_s_extension(ext.item) : prefix.with_i_extension(ext.item);
}

class Grower {
 public:
  Grower(const SequenceDatabase& db, const MinerConfig& cfg, std::uint32_t min_count,
         std::vector<Pattern>& out)
      : min_count_(min_count),
        max_length_(cfg.max_length),
        min_report_(cfg.min_pattern_length.value_or(1)),
        scratch_(db.dictionary().size()),
        out_(out) {}

  void visit(const ProjectedDatabase& parent, const Extension& ext) {
    ++nodes_;
    Sequence child = extend(parent.prefix(), ext);
    const std::size_t length = child.item_count();
    if (length >= min_report_) out_.push_back(Pattern{child, ext.count});
    if (max_length_ && length >= *max_length_) return;
    ProjectedDatabase projected = project(parent, ext);
    if (projected.size() < min_count_) return;
    const std::size_t bytes = projected.size() * sizeof(ProjectionEntry);
    live_bytes_ += bytes;
    peak_bytes_ = std::max(peak_bytes_, live_bytes_);
    for (const auto& next : collect_extensions(projected, min_count_, scratch_)) visit(projected, next);
    live_bytes_ -= bytes;
  }

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t peak_bytes() const noexcept { return peak_bytes_; }

 private:
  std::uint32_t min_count_;
  std::optional<std::size_t> max_length_;
  std::size_t min_report_;
  Scratch scratch_;
  std::vector<Pattern>& out_;
  std::size_t nodes_ = 0;
  std::size_t live_bytes_ = 0;
  std::size_t peak_bytes_ = 0;
};

}  // namespace

ProjectedDatabase ProjectedDatabase::initial(const SequenceDatabase& db) {
  std::vector<ProjectionEntry> entries;
  entries.reserve(db.size());
  for (std::size_t i = 0; i < db.size(); ++i)
    if (!db[i].empty()) entries.push_back({static_cast<std::uint32_t>(i), 0, 0, false});
  return ProjectedDatabase(db, Sequence{}, std::move(entries));
}

Suffix ProjectedDatabase::suffix_of(const ProjectionEntry& entry) const {
  const Sequence& s = base()[entry.seq_index];
  Suffix out;
  std::size_t rest_from = entry.elem_offset;
  if (entry.open_element) {
    auto items = s[entry.elem_offset].items();
    out.leading_partial.emplace(items.begin() + entry.item_offset, items.end());
    ++rest_from;
  }
  out.rest.assign(s.elements().begin() + static_cast<std::ptrdiff_t>(rest_from), s.elements().end());
  return out;
}

std::vector<Suffix> ProjectedDatabase::suffixes() const {
  std::vector<Suffix> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(suffix_of(e));
  return out;
}

std::vector<ItemCount> frequent_items(const SequenceDatabase& db, std::uint32_t min_count) {
  std::vector<ItemCount> out;
  for (const auto& ext : frequent_extensions(ProjectedDatabase::initial(db), min_count))
    out.push_back({ext.item, ext.count});
  return out;
}

ProjectedDatabase project(const ProjectedDatabase& pdb, const Extension& ext) {
  Sequence prefix = extend(pdb.prefix(), ext);
  std::vector<ProjectionEntry> entries;
  const auto& db = pdb.base();
  for (const auto& e : pdb.entries())
    if (auto next = project_entry(db[e.seq_index], e, pdb.prefix(), ext)) entries.push_back(*next);
  return ProjectedDatabase(db, std::move(prefix), std::move(entries));
}

std::vector<Extension> frequent_extensions(const ProjectedDatabase& pdb, std::uint32_t min_count) {
  if (min_count < 1) throw Error(ErrorKind::InvalidConfig, "min_count must be at least 1");
  Scratch scratch(pdb.base().dictionary().size());
  return collect_extensions(pdb, min_count, scratch);
}

PatternSet mine(const SequenceDatabase& db, const MinerConfig& cfg, Execution exec, MineStats* stats) {
  cfg.validate();
  PatternSet result;
  result.db_size = db.size();
  result.min_count = cfg.min_support.resolve(db.size());

  const auto root = ProjectedDatabase::initial(db);
  const auto first = frequent_extensions(root, result.min_count);
  std::vector<std::vector<Pattern>> branches(first.size());
  std::vector<MineStats> branch_stats(first.size());

  auto run_branch = [&](std::size_t i) {
    Grower grower(db, cfg, result.min_count, branches[i]);
    grower.visit(root, first[i]);
    branch_stats[i] = {grower.peak_bytes(), grower.nodes()};
  };

  const auto n = static_cast<std::ptrdiff_t>(first.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) run_branch(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) run_branch(static_cast<std::size_t>(i));
  }

  std::size_t total = 0;
  for (const auto& b : branches) total += b.size();
  result.patterns.reserve(total);
  for (auto& b : branches) std::move(b.begin(), b.end(), std::back_inserter(result.patterns));
  normalize(result.patterns);

  if (stats != nullptr) {
    MineStats s;
    s.peak_bytes = root.size() * sizeof(ProjectionEntry);
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
