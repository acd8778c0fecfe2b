#include "seqmine/checkin.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

#include "seqmine/csv.hpp"
#include "seqmine/error.hpp"

namespace seqmine {

namespace {

template <typename T>
std::optional<T> to_number(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::optional<std::string> optional_field(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

struct RowFields {
  std::string checkin_id, user_id, timestamp, lat, lon, category, subcategory, gender, origin;
};

// Shared validation for both formats. Returns the reason on failure.
std::optional<std::string> validate(const RowFields& f, CheckIn& out, std::unordered_set<std::string>& seen) {
  if (f.checkin_id.empty()) return "missing checkin_id";
  if (f.user_id.empty()) return "missing user_id";
  auto ts = parse_timestamp(f.timestamp);
  if (!ts) return "bad timestamp '" + f.timestamp + "'";
  auto lat = to_number<double>(f.lat);
  if (!lat) return "bad lat '" + f.lat + "'";
  if (!(*lat >= -90.0 && *lat <= 90.0)) return "lat out of range";
  auto lon = to_number<double>(f.lon);
  if (!lon) return "bad lon '" + f.lon + "'";
  if (!(*lon >= -180.0 && *lon <= 180.0)) return "lon out of range";
  if (!seen.insert(f.checkin_id).second) return "duplicate checkin_id '" + f.checkin_id + "'";
  out = CheckIn{f.checkin_id, f.user_id, *ts, *lat, *lon, f.category, f.subcategory,
                optional_field(f.gender), optional_field(f.origin)};
  return std::nullopt;
}

std::string json_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) {
    if (it->is_number_float()) return format_double(it->get<double>());
    return it->dump();
  }
  throw std::invalid_argument(std::string("field '") + key + "' has an unsupported type");
}

}  // namespace

std::optional<InputFormat> parse_input_format(std::string_view s) {
  if (s == "csv") return InputFormat::csv;
  if (s == "jsonl") return InputFormat::jsonl;
  return std::nullopt;
}

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SS followed by Z or an offset.
  if (s.size() < 20 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':')
    return std::nullopt;
  auto y = to_number<int>(s.substr(0, 4));
  auto mo = to_number<unsigned>(s.substr(5, 2));
  auto d = to_number<unsigned>(s.substr(8, 2));
  auto h = to_number<int>(s.substr(11, 2));
  auto mi = to_number<int>(s.substr(14, 2));
  auto se = to_number<int>(s.substr(17, 2));
  if (!y || !mo || !d || !h || !mi || !se) return std::nullopt;
  year_month_day ymd{year{*y}, month{*mo}, day{*d}};
  if (!ymd.ok() || *h > 23 || *mi > 59 || *se > 59) return std::nullopt;
  auto offset = UtcOffset::parse(s.substr(19));
  if (!offset) return std::nullopt;
  return sys_days{ymd} + hours{*h} + minutes{*mi} + seconds{*se} - offset->offset;
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{t - day_start};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<UtcOffset> UtcOffset::parse(std::string_view s) {
  if (s == "Z" || s == "UTC") return UtcOffset{};
  if (s.size() != 6 || (s[0] != '+' && s[0] != '-') || s[3] != ':') return std::nullopt;
  auto h = to_number<int>(s.substr(1, 2));
  auto m = to_number<int>(s.substr(4, 2));
  if (!h || !m || *h > 14 || *m > 59) return std::nullopt;
  std::chrono::minutes off{*h * 60 + *m};
  return UtcOffset{s[0] == '-' ? -off : off};
}

ParseResult parse_checkins(std::istream& in, InputFormat format) {
  ParseResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;

  if (format == InputFormat::csv) {
    if (!std::getline(in, line)) throw Error(ErrorKind::FormatError, "missing CSV header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCheckInHeader)
      throw Error(ErrorKind::FormatError, "unexpected CSV header '" + line + "', expected '" + kCheckInHeader + "'");
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split_csv_line(line);
      if (!fields) {
        result.rejects.push_back({line_no, "unterminated quote"});
        continue;
      }
      if (fields->size() != 9) {
        result.rejects.push_back({line_no, "expected 9 fields, found " + std::to_string(fields->size())});
        continue;
      }
      auto& f = *fields;
      RowFields row{f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8]};
      CheckIn c;
      if (auto why = validate(row, c, seen)) {
        result.rejects.push_back({line_no, *why});
      } else {
        result.checkins.push_back(std::move(c));
      }
    }
    return result;
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    RowFields row;
    try {
      auto obj = nlohmann::json::parse(line);
      if (!obj.is_object()) {
        result.rejects.push_back({line_no, "line is not a JSON object"});
        continue;
      }
      row = RowFields{json_string(obj, "checkin_id"), json_string(obj, "user_id"), json_string(obj, "timestamp"),
                      json_string(obj, "lat"),        json_string(obj, "lon"),     json_string(obj, "category"),
                      json_string(obj, "subcategory"), json_string(obj, "gender"), json_string(obj, "origin")};
    } catch (const std::exception& e) {
      result.rejects.push_back({line_no, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    CheckIn c;
    if (auto why = validate(row, c, seen)) {
      result.rejects.push_back({line_no, *why});
    } else {
      result.checkins.push_back(std::move(c));
    }
  }
  return result;
}

void write_checkins(std::ostream& out, std::span<const CheckIn> checkins, InputFormat format) {
  if (format == InputFormat::csv) {
    out << kCheckInHeader << '\n';
    for (const auto& c : checkins) {
      out << csv_field(c.checkin_id) << ',' << csv_field(c.user_id) << ',' << format_timestamp(c.timestamp) << ','
          << format_double(c.lat) << ',' << format_double(c.lon) << ',' << csv_field(c.category) << ','
          << csv_field(c.subcategory) << ',' << csv_field(c.gender.value_or("")) << ','
          << csv_field(c.origin.value_or("")) << '\n';
    }
    return;
  }
  for (const auto& c : checkins) {
    nlohmann::ordered_json j;
    j["checkin_id"] = c.checkin_id;
    j["user_id"] = c.user_id;
    j["timestamp"] = format_timestamp(c.timestamp);
    j["lat"] = c.lat;
    j["lon"] = c.lon;
    j["category"] = c.category;
    j["subcategory"] = c.subcategory;
    j["gender"] = c.gender ? nlohmann::ordered_json(*c.gender) : nlohmann::ordered_json(nullptr);
    j["origin"] = c.origin ? nlohmann::ordered_json(*c.origin) : nlohmann::ordered_json(nullptr);
    out << j.dump() << '\n';
  }
}

}  // namespace seqmine
