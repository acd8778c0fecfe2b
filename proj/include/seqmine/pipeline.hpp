#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqmine/activity.hpp"
#include "seqmine/checkin.hpp"
#include "seqmine/sequence.hpp"

namespace seqmine {

enum class Grouping { window, trip };

std::optional<Grouping> parse_grouping(std::string_view s);

struct PipelineOptions {
  ActivityMap activity_map;
  std::vector<WindowSpec> windows = default_windows();
  UtcOffset tz{std::chrono::hours{8}};
  Grouping grouping = Grouping::window;
  std::chrono::seconds merge_resolution{0};
  bool parallel = false;
};

struct PipelineOutput {
  SequenceDatabase db;
  std::size_t input_checkins = 0;
  std::size_t dropped = 0;     // blocklisted
  std::size_t unmatched = 0;   // tagged "Other"
  std::size_t unwindowed = 0;  // outside every window
};

// Check-ins -> activities -> groups -> sequence database.
PipelineOutput run_pipeline(std::span<const CheckIn> checkins, const PipelineOptions& options);

// Directory holding the shipped activity_map.txt and windows.txt.
std::filesystem::path default_data_dir();

}  // namespace seqmine
