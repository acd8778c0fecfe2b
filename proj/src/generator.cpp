#include "seqmine/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "seqmine/error.hpp"

namespace seqmine {

std::vector<CategoryWeight> default_categories() {
  return {
      {"Airport", "Transport", 8.0},
      {"Airport-Gate", "Transport", 4.0},
      {"Airport Terminal", "Transport", 2.0},
      {"Airport Lounge", "Transport", 1.0},
      {"Asian Restaurant", "Food", 6.0},
      {"Chinese Restaurant", "Food", 3.0},
      {"Food Court", "Food", 4.0},
      {"Café", "Food", 2.5},
      {"Bubble Tea Shop", "Food", 1.5},
      {"Shopping Mall", "Shops & Services", 6.0},
      {"Clothing Store", "Shops & Services", 2.0},
      {"Park", "Outdoors & Recreation", 6.0},
      {"Garden", "Outdoors & Recreation", 3.0},
      {"Botanical Garden", "Outdoors & Recreation", 2.0},
      {"Trail", "Outdoors & Recreation", 2.0},
      {"Beach", "Outdoors & Recreation", 2.0},
      {"Outdoor Sculpture", "Arts & Entertainment", 1.5},
      {"Scenic Lookout", "Outdoors & Recreation", 5.0},
      {"Bridge", "Outdoors & Recreation", 1.0},
      {"Buddhist Temple", "Spiritual Center", 2.0},
      {"Mosque", "Spiritual Center", 1.0},
      {"Hindu Temple", "Spiritual Center", 1.0},
      {"Church", "Spiritual Center", 1.0},
      {"Movie Theater", "Arts & Entertainment", 2.0},
      {"Theme Park", "Arts & Entertainment", 2.5},
      {"Casino", "Arts & Entertainment", 1.5},
      {"Arcade", "Arts & Entertainment", 0.5},
      {"Zoo", "Arts & Entertainment", 1.5},
      {"Aquarium", "Arts & Entertainment", 1.0},
      {"Art Gallery", "Arts & Entertainment", 1.0},
      {"Museum", "Arts & Entertainment", 2.0},
      {"Library", "College & University", 0.5},
      {"Historic Site", "Arts & Entertainment", 1.5},
      {"Monument / Landmark", "Outdoors & Recreation", 1.5},
      {"Pier", "Travel & Transport", 3.0},
      {"Metro Station", "Travel & Transport", 4.0},
      {"Bus Station", "Travel & Transport", 1.0},
      {"Border Crossing", "Travel & Transport", 0.5},
      {"Stadium", "Arts & Entertainment", 3.0},
      {"Gym", "Outdoors & Recreation", 0.5},
      {"Soccer Field", "Outdoors & Recreation", 0.5},
      {"Plaza", "Outdoors & Recreation", 1.5},
      {"Waterfront", "Outdoors & Recreation", 1.5},
      {"Market", "Shops & Services", 1.5},
      {"Spa", "Shops & Services", 0.5},
      {"Hotel", "Travel & Transport", 3.0},
      {"Convention Center", "Professional & Other Places", 0.5},
      {"Office", "Professional & Other Places", 0.5},
  };
}

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidConfig, why); };
  if (checkins_min > checkins_max) fail("checkins-min must not exceed checkins-max");
  if (categories.empty()) fail("category distribution is empty");
  double total = 0.0;
  for (const auto& c : categories) {
    if (!(c.weight >= 0.0)) fail("category weights must be non-negative");
    total += c.weight;
  }
  if (!(total > 0.0)) fail("category weights sum to zero");
  if (day_span < 1) fail("day span must be at least 1");
  if (trip_days_max < 1 || trip_days_max > day_span) fail("trip length must be in [1, day span]");
  if (!(daytime_fraction >= 0.0 && daytime_fraction <= 1.0)) fail("daytime fraction must be in [0,1]");
}

std::vector<CheckIn> generate_synthetic(const GeneratorConfig& cfg, std::uint64_t seed) {
  using namespace std::chrono;
  cfg.validate();
  std::mt19937_64 rng(seed);

  std::vector<double> weights;
  for (const auto& c : cfg.categories) weights.push_back(c.weight);
  std::discrete_distribution<std::size_t> pick_category(weights.begin(), weights.end());
  // Female / male / undisclosed proportions reported for the source data.
  std::discrete_distribution<int> pick_gender({3830.0, 3577.0, 207.0});
  static const char* const kOrigins[] = {"Thailand", "Kuwait",  "Jakarta", "Malaysia", "Indonesia",
                                         "Japan",    "Selangor", "Peru",   "Indiana",  "India"};
  std::uniform_int_distribution<std::size_t> pick_origin(0, std::size(kOrigins));  // last index: unknown
  std::uniform_int_distribution<std::size_t> pick_count(cfg.checkins_min, cfg.checkins_max);
  std::uniform_int_distribution<int> pick_trip_len(1, cfg.trip_days_max);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::bernoulli_distribution daytime(cfg.daytime_fraction);
  std::uniform_int_distribution<int> day_minute(7 * 60, 23 * 60 - 1);
  std::uniform_int_distribution<int> any_minute(0, 24 * 60 - 1);

  auto round6 = [](double v) { return std::round(v * 1e6) / 1e6; };

  std::vector<CheckIn> out;
  std::size_t next_id = 1;
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    char user_id[32];
    std::snprintf(user_id, sizeof user_id, "u%05zu", u + 1);
    const int g = pick_gender(rng);
    std::optional<std::string> gender;
    if (g == 0) gender = "female";
    if (g == 1) gender = "male";
    const std::size_t o = pick_origin(rng);
    std::optional<std::string> origin;
    if (o < std::size(kOrigins)) origin = kOrigins[o];

    const int trip_len = pick_trip_len(rng);
    std::uniform_int_distribution<int> pick_start(0, cfg.day_span - trip_len);
    const sys_days trip_start = cfg.first_day + days{pick_start(rng)};
    std::uniform_int_distribution<int> pick_day(0, trip_len - 1);

    const std::size_t n = pick_count(rng);
    std::vector<CheckIn> user;
    user.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const sys_days day = trip_start + days{pick_day(rng)};
      const int minute = daytime(rng) ? day_minute(rng) : any_minute(rng);
      const auto& cat = cfg.categories[pick_category(rng)];
      CheckIn c;
      c.user_id = user_id;
      c.timestamp = sys_seconds{day} + minutes{minute} - cfg.tz.offset;
      c.lat = round6(cfg.center_lat + jitter(rng));
      c.lon = round6(cfg.center_lon + jitter(rng));
      c.category = cat.category;
      c.subcategory = cat.subcategory;
      c.gender = gender;
      c.origin = origin;
      user.push_back(std::move(c));
    }
    std::stable_sort(user.begin(), user.end(),
                     [](const CheckIn& a, const CheckIn& b) { return a.timestamp < b.timestamp; });
    for (auto& c : user) {
      char id[32];
      std::snprintf(id, sizeof id, "c%07zu", next_id++);
      c.checkin_id = id;
      out.push_back(std::move(c));
    }
  }
  return out;
}

void BmsConfig::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidConfig, why); };
  if (!(mean_elements >= 1.0)) fail("mean elements must be >= 1");
  if (alphabet < 3) fail("alphabet must hold at least 3 items");
  if (!(zipf_exponent >= 0.0)) fail("zipf exponent must be non-negative");
  if (!(multi_item_probability >= 0.0 && multi_item_probability <= 1.0)) fail("multi-item probability must be in [0,1]");
  if (max_elements < 1) fail("max elements must be >= 1");
}

SequenceDatabase generate_bms(const BmsConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::geometric_distribution<std::size_t> extra_elements(1.0 / cfg.mean_elements);
  std::vector<double> weights(cfg.alphabet);
  for (std::size_t k = 0; k < cfg.alphabet; ++k) weights[k] = 1.0 / std::pow(static_cast<double>(k + 1), cfg.zipf_exponent);
  std::discrete_distribution<std::size_t> pick_item(weights.begin(), weights.end());
  std::bernoulli_distribution multi(cfg.multi_item_probability);
  std::uniform_int_distribution<int> multi_size(2, 3);

  std::vector<RawSequence> raw;
  std::vector<std::string> ids;
  raw.reserve(cfg.n_sequences);
  ids.reserve(cfg.n_sequences);
  for (std::size_t s = 0; s < cfg.n_sequences; ++s) {
    const std::size_t len = std::min(cfg.max_elements, 1 + extra_elements(rng));
    RawSequence seq;
    seq.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
      const int size = multi(rng) ? multi_size(rng) : 1;
      RawElement e;
      for (int k = 0; k < size; ++k) e.push_back(std::to_string(pick_item(rng) + 1));
      seq.push_back(std::move(e));
    }
    raw.push_back(std::move(seq));
    ids.push_back(std::to_string(s));
  }
  return SequenceDatabase::from_raw(raw, std::move(ids));
}

SequenceDatabase read_spmf(std::istream& in) {
  std::vector<RawSequence> raw;
  std::vector<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::FormatError, "line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%' || line[first] == '@') continue;
    std::istringstream tokens(line);
    std::string tok;
    RawSequence seq;
    RawElement element;
    bool closed = false;
    while (tokens >> tok) {
      if (closed) fail("tokens after -2");
      if (tok == "-1") {
        if (element.empty()) fail("empty element");
        seq.push_back(std::move(element));
        element.clear();
      } else if (tok == "-2") {
        if (!element.empty()) fail("element not closed with -1 before -2");
        closed = true;
      } else {
        element.push_back(tok);
      }
    }
    if (!closed) fail("sequence not terminated with -2");
    raw.push_back(std::move(seq));
    ids.push_back(std::to_string(raw.size() - 1));
  }
  return SequenceDatabase::from_raw(raw, std::move(ids));
}

void write_spmf(std::ostream& out, const SequenceDatabase& db) {
  const auto& dict = db.dictionary();
  for (const auto& s : db.sequences()) {
    for (const auto& e : s.elements()) {
      for (ItemId id : e.items()) out << dict.label(id) << ' ';
      out << "-1 ";
    }
    out << "-2\n";
  }
}

}  // namespace seqmine
