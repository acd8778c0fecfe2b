#include "seqmine/pipeline.hpp"

namespace seqmine {

std::optional<Grouping> parse_grouping(std::string_view s) {
  if (s == "window") return Grouping::window;
  if (s == "trip") return Grouping::trip;
  return std::nullopt;
}

PipelineOutput run_pipeline(std::span<const CheckIn> checkins, const PipelineOptions& options) {
  PipelineOutput out;
  out.input_checkins = checkins.size();
  TaggingResult tagged = apply_activity_map(checkins, options.activity_map, options.parallel);
  out.dropped = tagged.dropped;
  out.unmatched = tagged.unmatched;
  Groups groups = options.grouping == Grouping::window
                      ? segment_windows(tagged.tagged, options.windows, options.tz)
                      : group_by_trip(tagged.tagged);
  out.unwindowed = groups.unwindowed.size();
  out.db = build_sequences(groups, options.merge_resolution);
  return out;
}

std::filesystem::path default_data_dir() {
#ifdef SEQMINE_DATA_DIR
  return SEQMINE_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace seqmine
