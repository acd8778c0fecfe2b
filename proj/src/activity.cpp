#include "seqmine/activity.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "seqmine/error.hpp"

namespace seqmine {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

bool glob_match(const std::string& pattern, std::string_view text) {
  const std::string subject(text);
  return ::fnmatch(pattern.c_str(), subject.c_str(), FNM_CASEFOLD) == 0;
}

[[noreturn]] void config_error(std::size_t line_no, const std::string& why) {
  throw Error(ErrorKind::FormatError, "config line " + std::to_string(line_no) + ": " + why);
}

std::optional<std::chrono::minutes> parse_clock(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  int h = 0, m = 0;
  auto r1 = std::from_chars(s.data(), s.data() + 2, h);
  auto r2 = std::from_chars(s.data() + 3, s.data() + 5, m);
  if (r1.ec != std::errc{} || r1.ptr != s.data() + 2 || r2.ec != std::errc{} || r2.ptr != s.data() + 5)
    return std::nullopt;
  if (h > 24 || m > 59 || (h == 24 && m != 0)) return std::nullopt;
  return std::chrono::minutes{h * 60 + m};
}

bool starts_with_word(std::string_view line, std::string_view word) {
  return line.size() > word.size() && line.substr(0, word.size()) == word &&
         (line[word.size()] == ' ' || line[word.size()] == '\t');
}

}  // namespace

ActivityMap::ActivityMap(std::vector<ActivityRule> rules, std::vector<std::string> blocklist)
    : rules_(std::move(rules)), blocklist_(std::move(blocklist)) {
  for (const auto& r : rules_)
    if (r.pattern.empty() || r.activity.empty())
      throw Error(ErrorKind::InvalidConfig, "activity rule with empty pattern or label");
}

ActivityMap ActivityMap::parse(std::istream& in) {
  std::vector<ActivityRule> rules;
  std::vector<std::string> blocklist;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_comment(raw);
    if (line.empty() || starts_with_word(line, "window")) continue;
    if (starts_with_word(line, "block")) {
      auto pattern = trim(line.substr(5));
      if (pattern.empty()) config_error(line_no, "block needs a pattern");
      blocklist.emplace_back(pattern);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected 'pattern = activity'");
    auto pattern = trim(line.substr(0, eq));
    auto activity = trim(line.substr(eq + 1));
    if (pattern.empty() || activity.empty()) config_error(line_no, "empty pattern or activity");
    rules.push_back({std::string(pattern), std::string(activity)});
  }
  return ActivityMap(std::move(rules), std::move(blocklist));
}

ActivityMap ActivityMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FormatError, "cannot open activity map '" + path.string() + "'");
  return parse(in);
}

bool ActivityMap::blocked(std::string_view category) const {
  return std::any_of(blocklist_.begin(), blocklist_.end(),
                     [&](const std::string& p) { return glob_match(p, category); });
}

std::optional<std::string> ActivityMap::classify(std::string_view category) const {
  if (blocked(category)) return std::nullopt;
  for (const auto& r : rules_)
    if (glob_match(r.pattern, category)) return r.activity;
  return std::string(kOtherActivity);
}

TaggingResult apply_activity_map(std::span<const CheckIn> checkins, const ActivityMap& map, bool parallel) {
  std::vector<std::optional<std::string>> labels(checkins.size());
  const auto n = static_cast<std::ptrdiff_t>(checkins.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      labels[static_cast<std::size_t>(i)] = map.classify(checkins[static_cast<std::size_t>(i)].category);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      labels[static_cast<std::size_t>(i)] = map.classify(checkins[static_cast<std::size_t>(i)].category);
  }

  TaggingResult out;
  for (std::size_t i = 0; i < checkins.size(); ++i) {
    if (!labels[i]) {
      ++out.dropped;
      continue;
    }
    if (*labels[i] == kOtherActivity) ++out.unmatched;
    out.tagged.push_back({checkins[i], std::move(*labels[i])});
  }
  return out;
}

std::vector<WindowSpec> default_windows() {
  using std::chrono::hours;
  return {{"morning", hours{7}, hours{14}}, {"afternoon", hours{14}, hours{24}}};
}

std::vector<WindowSpec> parse_windows(std::istream& in) {
  std::vector<WindowSpec> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_comment(raw);
    if (!starts_with_word(line, "window")) continue;
    std::istringstream fields{std::string(line.substr(6))};
    std::string name, start, end, extra;
    if (!(fields >> name >> start >> end) || (fields >> extra))
      config_error(line_no, "expected 'window NAME HH:MM HH:MM'");
    auto s = parse_clock(start);
    auto e = parse_clock(end);
    if (!s || !e) config_error(line_no, "bad time of day");
    if (*s >= *e) config_error(line_no, "window '" + name + "' is empty or wraps midnight");
    if (std::any_of(out.begin(), out.end(), [&](const WindowSpec& w) { return w.name == name; }))
      config_error(line_no, "duplicate window '" + name + "'");
    out.push_back({name, *s, *e});
  }
  return out;
}

std::vector<WindowSpec> load_windows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FormatError, "cannot open window config '" + path.string() + "'");
  return parse_windows(in);
}

std::chrono::minutes local_time_of_day(Timestamp t, UtcOffset tz) noexcept {
  using namespace std::chrono;
  const auto local = t + tz.offset;
  return floor<minutes>(local - floor<days>(local));
}

Groups segment_windows(std::span<const TaggedCheckIn> tagged, std::span<const WindowSpec> windows, UtcOffset tz) {
  Groups out;
  for (const auto& t : tagged) {
    const auto tod = local_time_of_day(t.checkin.timestamp, tz);
    bool placed = false;
    for (const auto& w : windows) {
      if (!w.contains(tod)) continue;
      out.groups[GroupKey{t.checkin.user_id, w.name}].push_back(t);
      placed = true;
    }
    if (!placed) out.unwindowed.push_back(t);
  }
  return out;
}

Groups group_by_trip(std::span<const TaggedCheckIn> tagged) {
  Groups out;
  for (const auto& t : tagged) out.groups[GroupKey{t.checkin.user_id, {}}].push_back(t);
  return out;
}

SequenceDatabase build_sequences(const Groups& groups, std::chrono::seconds merge_resolution) {
  if (merge_resolution.count() < 0) throw Error(ErrorKind::InvalidConfig, "merge resolution must be >= 0");
  std::vector<RawSequence> raw;
  std::vector<std::string> ids;
  raw.reserve(groups.groups.size());
  for (const auto& [key, members] : groups.groups) {
    std::vector<const TaggedCheckIn*> ordered;
    ordered.reserve(members.size());
    for (const auto& m : members) ordered.push_back(&m);
    std::stable_sort(ordered.begin(), ordered.end(), [](const TaggedCheckIn* a, const TaggedCheckIn* b) {
      return a->checkin.timestamp < b->checkin.timestamp;
    });
    RawSequence seq;
    Timestamp element_start{};
    for (const TaggedCheckIn* t : ordered) {
      if (!seq.empty() && t->checkin.timestamp - element_start <= merge_resolution) {
        seq.back().push_back(t->activity);
      } else {
        seq.push_back({t->activity});
        element_start = t->checkin.timestamp;
      }
    }
    raw.push_back(std::move(seq));
    ids.push_back(key.window.empty() ? key.user_id : key.user_id + "@" + key.window);
  }
  return SequenceDatabase::from_raw(raw, std::move(ids));
}

}  // namespace seqmine
