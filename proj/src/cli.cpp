#include "seqmine/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "seqmine/bench.hpp"
#include "seqmine/csv.hpp"
#include "seqmine/error.hpp"
#include "seqmine/generator.hpp"
#include "seqmine/pipeline.hpp"
#include "seqmine/prefixspan.hpp"
#include "seqmine/rule_stats.hpp"
#include "seqmine/spam.hpp"

namespace seqmine::cli {

namespace fs = std::filesystem;

namespace {

// Carries the exit code out of a subcommand.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& message) { throw Failure{kConfigError, message}; }
[[noreturn]] void input_error(const std::string& message) { throw Failure{kInputError, message}; }

MinSupport parse_min_support(const std::string& text) {
  const bool fraction = text.find_first_of(".eE") != std::string::npos;
  std::size_t used = 0;
  try {
    if (fraction) {
      const double v = std::stod(text, &used);
      if (used != text.size()) config_error("--min-support: cannot parse '" + text + "'");
      if (!(v > 0.0 && v <= 1.0)) config_error("min-support fraction must be in (0,1]");
      return MinSupport::fraction(v);
    }
    const long long v = std::stoll(text, &used);
    if (used != text.size()) config_error("--min-support: cannot parse '" + text + "'");
    if (v < 1) config_error("min-support count must be at least 1");
    return MinSupport::count(v);
  } catch (const std::logic_error&) {
    config_error("--min-support: cannot parse '" + text + "'");
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) config_error("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

PipelineOptions load_pipeline_options(const std::string& activity_map, const std::string& windows,
                                      const std::string& tz, const std::string& grouping, long merge_seconds,
                                      bool parallel) {
  PipelineOptions options;
  try {
    options.activity_map =
        ActivityMap::load(activity_map.empty() ? default_data_dir() / "activity_map.txt" : fs::path(activity_map));
    if (!windows.empty()) {
      options.windows = load_windows(windows);
      if (options.windows.empty()) config_error("--windows: no 'window' lines in '" + windows + "'");
    }
  } catch (const Error& e) {
    config_error(e.what());
  }
  auto offset = UtcOffset::parse(tz);
  if (!offset) config_error("--tz: expected +HH:MM, -HH:MM or Z, got '" + tz + "'");
  options.tz = *offset;
  auto g = parse_grouping(grouping);
  if (!g) config_error("--grouping must be 'window' or 'trip'");
  options.grouping = *g;
  if (merge_seconds < 0) config_error("--merge-resolution must be >= 0");
  options.merge_resolution = std::chrono::seconds{merge_seconds};
  options.parallel = parallel;
  return options;
}

struct MineArgs {
  std::string input;
  std::string format = "csv";
  std::string min_support;
  std::size_t max_length = 0;
  std::string windows;
  std::string activity_map;
  std::string grouping = "window";
  std::string miner = "prefixspan";
  std::size_t top_k = 0;
  std::string sort = "frequency";
  std::string out;
  std::string tz = "+08:00";
  long merge_resolution = 0;
  std::size_t report_elements = 3;
  bool parallel = false;
};

int cmd_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
  MinerConfig cfg;
  cfg.min_support = parse_min_support(a.min_support);
  if (a.max_length > 0) cfg.max_length = a.max_length;
  if (a.miner != "prefixspan" && a.miner != "spam") config_error("--miner must be 'prefixspan' or 'spam'");
  auto sort = parse_sort_key(a.sort);
  if (!sort) config_error("--sort must be one of frequency, support, confidence");
  const bool spmf = a.format == "spmf";
  auto format = parse_input_format(a.format);
  if (!spmf && !format) config_error("--format must be csv, jsonl or spmf");
  const Execution exec = a.parallel ? Execution::parallel : Execution::serial;

  std::optional<PipelineOptions> pipeline;
  if (!spmf)
    pipeline = load_pipeline_options(a.activity_map, a.windows, a.tz, a.grouping, a.merge_resolution, a.parallel);

  std::ifstream in(a.input, std::ios::binary);
  if (!in) input_error("--input: cannot open '" + a.input + "'");

  const fs::path out_dir(a.out);
  ensure_dir(out_dir);

  SequenceDatabase db;
  try {
    if (spmf) {
      db = read_spmf(in);
    } else {
      ParseResult parsed = parse_checkins(in, *format);
      if (!parsed.rejects.empty()) {
        auto rejects = open_output(out_dir / "rejects.csv");
        rejects << "line,reason\n";
        for (const auto& r : parsed.rejects) rejects << r.line << ',' << csv_field(r.reason) << '\n';
        err << "warning: " << parsed.rejects.size() << " rejected rows (first: line " << parsed.rejects.front().line
            << ": " << parsed.rejects.front().reason << "); see rejects.csv\n";
      }
      db = run_pipeline(parsed.checkins, *pipeline).db;
    }
  } catch (const Error& e) {
    input_error(a.input + ": " + e.what());
  }

  PatternSet patterns;
  try {
    patterns = a.miner == "spam" ? mine_spam(db, cfg, exec) : mine(db, cfg, exec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidConfig) config_error(e.what());
    input_error(e.what());
  }

  ReportOptions report;
  if (a.report_elements > 0) {
    report.elements = a.report_elements;
  } else {
    report.elements.reset();
    report.singleton_elements = false;
  }
  if (a.top_k > 0) report.top_k = a.top_k;
  report.sort = *sort;
  const auto rows = build_report(patterns, db, report, exec);

  const auto& dict = db.dictionary();
  {
    auto f = open_output(out_dir / "patterns.csv");
    write_patterns_csv(f, patterns, dict);
  }
  {
    auto f = open_output(out_dir / "patterns.jsonl");
    write_patterns_jsonl(f, patterns, dict);
  }
  {
    auto f = open_output(out_dir / "report.csv");
    write_report_csv(f, rows, dict);
  }
  {
    auto f = open_output(out_dir / "report.jsonl");
    write_report_jsonl(f, rows, dict);
  }
  out << "mined " << patterns.size() << " patterns from " << db.size() << " sequences (miner=" << a.miner
      << ", min_count=" << patterns.min_count << ", report_rows=" << rows.size() << ")\n";
  return kOk;
}

struct GenerateArgs {
  std::string shape = "singapore";
  std::size_t users = 1057;
  std::size_t checkins_min = 8;
  std::size_t checkins_max = 10;
  std::size_t sequences = 30000;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.shape == "singapore") {
    GeneratorConfig cfg;
    cfg.n_users = a.users;
    cfg.checkins_min = a.checkins_min;
    cfg.checkins_max = a.checkins_max;
    auto format = parse_input_format(a.format);
    if (!format) config_error("--format must be csv or jsonl for the singapore shape");
    std::vector<CheckIn> checkins;
    try {
      checkins = generate_synthetic(cfg, a.seed);
    } catch (const Error& e) {
      config_error(e.what());
    }
    auto f = open_output(a.out);
    write_checkins(f, checkins, *format);
    out << "generated " << checkins.size() << " check-ins for " << a.users << " users\n";
    return kOk;
  }
  if (a.shape == "bms") {
    BmsConfig cfg;
    cfg.n_sequences = a.sequences;
    SequenceDatabase db;
    try {
      db = generate_bms(cfg, a.seed);
    } catch (const Error& e) {
      config_error(e.what());
    }
    auto f = open_output(a.out);
    write_spmf(f, db);
    out << "generated " << db.size() << " sequences, " << format_ratio(db.average_elements())
        << " elements on average, " << db.dictionary().size() << " items\n";
    return kOk;
  }
  config_error("--shape must be 'singapore' or 'bms'");
}

struct BenchArgs {
  std::string shape = "bms";
  std::string input;
  std::vector<double> supports{0.005, 0.01, 0.02};
  std::size_t repeats = 3;
  std::size_t sequences = 30000;
  std::size_t max_length = 0;
  std::uint64_t seed = 7;
  std::string out;
  bool parallel = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.supports.empty()) config_error("--supports needs at least one value");
  for (double s : a.supports)
    if (!(s > 0.0 && s <= 1.0)) config_error("min-support fraction must be in (0,1]");
  if (a.repeats < 1) config_error("--repeats must be >= 1");

  SequenceDatabase db;
  try {
    if (!a.input.empty()) {
      std::ifstream in(a.input, std::ios::binary);
      if (!in) input_error("--input: cannot open '" + a.input + "'");
      db = read_spmf(in);
    } else if (a.shape == "bms") {
      BmsConfig cfg;
      cfg.n_sequences = a.sequences;
      db = generate_bms(cfg, a.seed);
    } else if (a.shape == "singapore") {
      PipelineOptions options;
      options.activity_map = ActivityMap::load(default_data_dir() / "activity_map.txt");
      db = run_pipeline(generate_synthetic(GeneratorConfig{}, a.seed), options).db;
    } else {
      config_error("--shape must be 'singapore' or 'bms'");
    }
  } catch (const Error& e) {
    input_error(e.what());
  }

  BenchOptions options;
  options.supports = a.supports;
  options.repeats = a.repeats;
  if (a.max_length > 0) options.max_length = a.max_length;
  options.exec = a.parallel ? Execution::parallel : Execution::serial;
  const auto results = run_bench(db, options);

  const fs::path out_dir(a.out);
  ensure_dir(out_dir);
  {
    auto f = open_output(out_dir / "bench.csv");
    write_bench_csv(f, results);
  }
  {
    auto f = open_output(out_dir / "comparison.csv");
    write_comparison_csv(f, results);
  }
  out << format_bench_table(results);
  if (!pattern_counts_agree(results)) {
    err << "error: prefixspan and spam disagree on pattern counts\n";
    return kMinerMismatch;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential pattern mining over sequence databases and check-in streams", "seqmine"};
  app.require_subcommand(1);

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Mine sequential patterns and write pattern and rule reports");
  mine_cmd->add_option("--input", mine_args.input, "Input file")->required();
  mine_cmd->add_option("--format", mine_args.format, "csv | jsonl (check-ins) or spmf (sequences)");
  mine_cmd->add_option("--min-support", mine_args.min_support, "Sequence count, or fraction in (0,1]")->required();
  mine_cmd->add_option("--max-length", mine_args.max_length, "Maximum items per pattern (0: unlimited)");
  mine_cmd->add_option("--windows", mine_args.windows, "Window config file");
  mine_cmd->add_option("--activity-map", mine_args.activity_map, "Category to activity map");
  mine_cmd->add_option("--grouping", mine_args.grouping, "window | trip");
  mine_cmd->add_option("--miner", mine_args.miner, "prefixspan | spam");
  mine_cmd->add_option("--top-k", mine_args.top_k, "Keep the first K report rows (0: all)");
  mine_cmd->add_option("--sort", mine_args.sort, "frequency | support | confidence");
  mine_cmd->add_option("--out", mine_args.out, "Output directory")->required();
  mine_cmd->add_option("--tz", mine_args.tz, "UTC offset for local time of day");
  mine_cmd->add_option("--merge-resolution", mine_args.merge_resolution, "Seconds within which check-ins share an element");
  mine_cmd->add_option("--report-elements", mine_args.report_elements, "Report patterns with this many single-item elements (0: all patterns)");
  mine_cmd->add_flag("--parallel", mine_args.parallel, "Use the OpenMP code paths");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a deterministic synthetic dataset");
  gen_cmd->add_option("--shape", gen_args.shape, "singapore (check-ins) | bms (SPMF sequences)");
  gen_cmd->add_option("--users", gen_args.users, "Number of tourists");
  gen_cmd->add_option("--checkins-min", gen_args.checkins_min, "Fewest check-ins per tourist");
  gen_cmd->add_option("--checkins-max", gen_args.checkins_max, "Most check-ins per tourist");
  gen_cmd->add_option("--sequences", gen_args.sequences, "Number of sequences for the bms shape");
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("--format", gen_args.format, "csv | jsonl");
  gen_cmd->add_option("--out", gen_args.out, "Output file")->required();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time both miners over a list of support levels");
  bench_cmd->add_option("--shape", bench_args.shape, "bms | singapore");
  bench_cmd->add_option("--input", bench_args.input, "SPMF file to use instead of a generated shape");
  bench_cmd->add_option("--supports", bench_args.supports, "Relative supports")->delimiter(',');
  bench_cmd->add_option("--repeats", bench_args.repeats, "Timed runs per point; the median is reported");
  bench_cmd->add_option("--sequences", bench_args.sequences, "Sequences for the bms shape");
  bench_cmd->add_option("--max-length", bench_args.max_length, "Maximum items per pattern (0: unlimited)");
  bench_cmd->add_option("--seed", bench_args.seed, "Random seed");
  bench_cmd->add_option("--out", bench_args.out, "Output directory")->required();
  bench_cmd->add_flag("--parallel", bench_args.parallel, "Throughput mode: OpenMP fan-out inside each miner");

  std::vector<const char*> argv{"seqmine"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine_args, out, err);
    if (gen_cmd->parsed()) return cmd_generate(gen_args, out);
    return cmd_bench(bench_args, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidConfig ? kConfigError : kInputError;
  }
}

}  // namespace seqmine::cli
