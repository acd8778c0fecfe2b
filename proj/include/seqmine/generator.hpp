#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqmine/checkin.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

struct CategoryWeight {
  std::string category;
  std::string subcategory;
  double weight = 1.0;
};

// Venue categories seen in Singapore check-in data, airport entries included
// so that filtering is exercised.
std::vector<CategoryWeight> default_categories();

struct GeneratorConfig {
  std::size_t n_users = 1057;
  std::size_t checkins_min = 8;
  std::size_t checkins_max = 10;
  std::vector<CategoryWeight> categories = default_categories();
  std::chrono::sys_days first_day = std::chrono::sys_days{std::chrono::year{2019} / 1 / 1};
  int day_span = 180;
  int trip_days_max = 4;
  // Share of check-ins placed between 07:00 and 23:00 local; the rest fall
  // anywhere in the day.
  double daytime_fraction = 0.9;
  UtcOffset tz{std::chrono::hours{8}};
  double center_lat = 1.3521;
  double center_lon = 103.8198;

  void validate() const;  // throws InvalidConfig
};

// Deterministic for a fixed seed. Check-ins are grouped by user and ordered
// by time within each user.
std::vector<CheckIn> generate_synthetic(const GeneratorConfig& cfg, std::uint64_t seed);

// Click-stream shaped database: element counts are geometric with the given
// mean, items are Zipf distributed, and most elements hold one item.
struct BmsConfig {
  std::size_t n_sequences = 30000;
  double mean_elements = 2.3;
  std::size_t alphabet = 497;
  double zipf_exponent = 1.0;
  double multi_item_probability = 0.1;
  std::size_t max_elements = 256;

  void validate() const;
};

SequenceDatabase generate_bms(const BmsConfig& cfg, std::uint64_t seed);

// SPMF sequence format: items separated by spaces, "-1" closes an element,
// "-2" closes a sequence; one sequence per line. Throws FormatError.
SequenceDatabase read_spmf(std::istream& in);
void write_spmf(std::ostream& out, const SequenceDatabase& db);

}  // namespace seqmine
