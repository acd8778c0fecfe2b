#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqmine {

// RFC 4180 quoting, applied only when the field contains a comma, quote or
// line break.
std::string csv_field(std::string_view field);

// Splits one CSV record into fields. Returns nullopt on an unterminated
// quote; records spanning several lines are not supported.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

}  // namespace seqmine
