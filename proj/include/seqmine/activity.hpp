#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqmine/checkin.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

inline constexpr const char* kOtherActivity = "Other";

struct ActivityRule {
  std::string pattern;  // shell glob, case-insensitive
  std::string activity;
};

// Category -> activity classifier. Blocklist patterns are checked first; the
// first matching rule wins; unmatched categories map to kOtherActivity.
//
// Text form, one directive per line, '#' starts a comment:
//   block Airport*
//   *Restaurant* = Dining
// "window ..." lines belong to the window config and are skipped here.
class ActivityMap {
 public:
  ActivityMap() = default;
  ActivityMap(std::vector<ActivityRule> rules, std::vector<std::string> blocklist);

  static ActivityMap parse(std::istream& in);  // throws FormatError with the line number
  static ActivityMap load(const std::filesystem::path& path);

  bool blocked(std::string_view category) const;
  // nullopt when blocked.
  std::optional<std::string> classify(std::string_view category) const;

  std::span<const ActivityRule> rules() const noexcept { return rules_; }
  std::span<const std::string> blocklist() const noexcept { return blocklist_; }

 private:
  std::vector<ActivityRule> rules_;
  std::vector<std::string> blocklist_;
};

struct TaggedCheckIn {
  CheckIn checkin;
  std::string activity;

  bool operator==(const TaggedCheckIn&) const = default;
};

struct TaggingResult {
  std::vector<TaggedCheckIn> tagged;
  std::size_t dropped = 0;    // blocklisted
  std::size_t unmatched = 0;  // tagged kOtherActivity
};

TaggingResult apply_activity_map(std::span<const CheckIn> checkins, const ActivityMap& map,
                                 bool parallel = false);

// Half-open local time-of-day range [start, end); end may be 24:00.
struct WindowSpec {
  std::string name;
  std::chrono::minutes start{0};
  std::chrono::minutes end{0};

  bool contains(std::chrono::minutes time_of_day) const noexcept {
    return time_of_day >= start && time_of_day < end;
  }
  bool operator==(const WindowSpec&) const = default;
};

// Morning [07:00,14:00) and afternoon [14:00,24:00).
std::vector<WindowSpec> default_windows();

// Reads "window NAME HH:MM HH:MM" lines; "pattern = activity" and "block"
// lines are skipped so one file may carry both configs. Throws FormatError.
std::vector<WindowSpec> parse_windows(std::istream& in);
std::vector<WindowSpec> load_windows(const std::filesystem::path& path);

std::chrono::minutes local_time_of_day(Timestamp t, UtcOffset tz) noexcept;

struct GroupKey {
  std::string user_id;
  std::string window;  // empty in trip grouping

  auto operator<=>(const GroupKey&) const = default;
};

struct Groups {
  std::map<GroupKey, std::vector<TaggedCheckIn>> groups;
  std::vector<TaggedCheckIn> unwindowed;
};

// Every check-in goes to each window containing its local time, or to
// `unwindowed` when no window does. Input order is kept within each group.
Groups segment_windows(std::span<const TaggedCheckIn> tagged, std::span<const WindowSpec> windows, UtcOffset tz);
// One group per user covering the whole trip.
Groups group_by_trip(std::span<const TaggedCheckIn> tagged);

// One sequence per group, in key order, with ids "user" or "user@window".
// Check-ins are ordered by time; a check-in no more than `merge_resolution`
// after the first check-in of the current element joins that element.
SequenceDatabase build_sequences(const Groups& groups, std::chrono::seconds merge_resolution);

}  // namespace seqmine
