#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqmine {

using Timestamp = std::chrono::sys_seconds;

struct CheckIn {
  std::string checkin_id;
  std::string user_id;
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  std::string category;
  std::string subcategory;
  std::optional<std::string> gender;
  std::optional<std::string> origin;

  bool operator==(const CheckIn&) const = default;
};

enum class InputFormat { csv, jsonl };

std::optional<InputFormat> parse_input_format(std::string_view s);

inline constexpr const char* kCheckInHeader = "checkin_id,user_id,timestamp,lat,lon,category,subcategory,gender,origin";

struct Reject {
  std::size_t line = 0;  // 1-based physical line
  std::string reason;
};

struct ParseResult {
  std::vector<CheckIn> checkins;
  std::vector<Reject> rejects;
};

// Valid rows in file order; bad rows are collected in `rejects`. Throws
// FormatError when the CSV header is missing or differs from kCheckInHeader.
ParseResult parse_checkins(std::istream& in, InputFormat format);
void write_checkins(std::ostream& out, std::span<const CheckIn> checkins, InputFormat format);

// "2019-03-01T10:00:00Z"; fractional seconds are not supported. Parsing also
// accepts a "+HH:MM" / "-HH:MM" offset in place of "Z".
std::optional<Timestamp> parse_timestamp(std::string_view s);
std::string format_timestamp(Timestamp t);

// Fixed offset from UTC used to derive local time of day.
struct UtcOffset {
  std::chrono::minutes offset{0};

  static std::optional<UtcOffset> parse(std::string_view s);  // "+08:00", "-05:30", "Z"
};

}  // namespace seqmine
