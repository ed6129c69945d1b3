#include "gendertime/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "gendertime/corpus.hpp"
#include "gendertime/dblp.hpp"
#include "gendertime/errors.hpp"
#include "gendertime/gender_model.hpp"
#include "gendertime/manifest.hpp"
#include "gendertime/normalize.hpp"
#include "gendertime/sampling.hpp"
#include "gendertime/shift_analysis.hpp"
#include "gendertime/ssa_ingest.hpp"
#include "gendertime/trend.hpp"

namespace gendertime {
namespace {

using json = nlohmann::ordered_json;
using detail::format_double;

struct GlobalOptions {
  std::string table;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool strict = false;
};

struct CommandContext {
  const GlobalOptions& global;
  std::ostream& out;
  std::ostream& err;
  RunManifest manifest;
};

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s.push_back(sep);
    s += parts[i];
  }
  return s;
}

void record_flags(const CLI::App& app, std::map<std::string, std::string>& flags) {
  for (const CLI::Option* opt : app.get_options()) {
    const auto& long_names = opt->get_lnames();
    if (std::find(long_names.begin(), long_names.end(), "help") != long_names.end() ||
        std::find(long_names.begin(), long_names.end(), "version") != long_names.end()) {
      continue;
    }
    const std::string name = opt->get_name();
    flags[name] = opt->count() > 0 ? join(opt->results(), ',') : opt->get_default_str();
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Buffers the command's primary output; written to --out (plus a manifest
// sidecar) or to stdout (manifest on stderr) once the command succeeded.
class Output {
 public:
  explicit Output(CommandContext& ctx) : ctx_(ctx) {}

  std::ostream& stream() { return buffer_; }

  void commit() {
    const std::string manifest = ctx_.manifest.to_json();
    if (ctx_.global.out.empty()) {
      ctx_.out << buffer_.str();
      ctx_.err << "manifest: " << manifest << '\n';
      return;
    }
    write_file(ctx_.global.out, buffer_.str());
    write_file(ctx_.global.out + ".manifest.json", manifest + "\n");
  }

 private:
  static void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
    if (!f) throw Error("failed writing '" + path + "'");
  }

  CommandContext& ctx_;
  std::ostringstream buffer_;
};

NameYearTable load_table(CommandContext& ctx) {
  const std::string& source = ctx.global.table;
  if (source.empty()) {
    std::ostringstream snap;
    write_snapshot(load_fixture(), snap);
    ctx.manifest.inputs.push_back({"table", "builtin:fixture", sha256_hex(snap.str())});
    return load_fixture();
  }
  if (std::filesystem::is_directory(source)) {
    ctx.manifest.inputs.push_back({"table", source, sha256_path(source)});
    return load_ssa_directory(source);
  }
  const std::string bytes = read_file(source);
  ctx.manifest.inputs.push_back({"table", source, sha256_hex(bytes)});
  std::istringstream in(bytes);
  try {
    return read_snapshot(in);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what(), e.line());
  }
}

void add_model_flags(CLI::App* cmd, ModelConfig& model) {
  cmd->add_option("--year-shift", model.year_shift,
                  "Years subtracted from the publication year before lookup")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-fallback", model.max_fallback_distance,
                  "Largest distance (years) to the nearest year with data")
      ->check(CLI::NonNegativeNumber);
}

void add_threshold_flags(CLI::App* cmd, Thresholds& thresholds) {
  cmd->add_option("--tau-female", thresholds.tau_female, "p(F) at or above which a name is female");
  cmd->add_option("--tau-male", thresholds.tau_male, "p(F) at or below which a name is male");
}

struct CorpusFlags {
  std::string corpus;
  std::string dblp;
  std::string overrides;
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags, bool with_overrides) {
  auto* csv = cmd->add_option("--corpus", flags.corpus, "Corpus CSV (record_id,venue,year,authors)");
  auto* xml = cmd->add_option("--dblp", flags.dblp, "DBLP-style XML file");
  csv->excludes(xml);
  if (with_overrides) {
    cmd->add_option("--overrides", flags.overrides,
                    "Override ledger CSV (key,gender,year_from,year_to,venue,source_note)");
  }
}

std::vector<CorpusRecord> load_corpus(CommandContext& ctx, const CorpusFlags& flags) {
  if (flags.corpus.empty() == flags.dblp.empty()) {
    throw ValidationError("exactly one of --corpus or --dblp is required");
  }
  std::vector<CorpusRecord> records;
  if (!flags.corpus.empty()) {
    const std::string bytes = read_file(flags.corpus);
    ctx.manifest.inputs.push_back({"corpus", flags.corpus, sha256_hex(bytes)});
    std::istringstream in(bytes);
    auto parsed = parse_corpus_csv(in, ctx.global.strict);
    for (const auto& issue : parsed.skipped) {
      ctx.err << "warning: " << flags.corpus << ": skipped " << issue.message << '\n';
    }
    records = std::move(parsed.records);
  } else {
    ctx.manifest.inputs.push_back({"dblp", flags.dblp, sha256_path(flags.dblp)});
    std::ifstream in(flags.dblp, std::ios::binary);
    if (!in) throw Error("cannot open '" + flags.dblp + "'");
    auto parsed = parse_dblp_subset(in);
    if (parsed.stats.skipped() > 0) {
      ctx.err << "warning: " << flags.dblp << ": skipped " << parsed.stats.skipped_missing_year
              << " publication(s) without a usable year and " << parsed.stats.skipped_no_authors
              << " without authors\n";
    }
    records = std::move(parsed.records);
  }
  if (!flags.overrides.empty()) {
    const std::string bytes = read_file(flags.overrides);
    ctx.manifest.inputs.push_back({"overrides", flags.overrides, sha256_hex(bytes)});
    std::istringstream in(bytes);
    auto result = apply_overrides(std::move(records), parse_override_ledger(in));
    for (const auto& w : result.warnings) ctx.err << "warning: " << w << '\n';
    records = std::move(result.records);
  }
  return records;
}

json estimate_json(std::string_view name, const GenderEstimate& e, const Thresholds& t) {
  json j;
  j["name"] = std::string(name);
  j["normalized"] = normalize_name(name);
  j["status"] = e.known() ? "known" : "unknown";
  j["p_female"] = e.p_female ? json(*e.p_female) : json(nullptr);
  j["female_count"] = e.female_count;
  j["male_count"] = e.male_count;
  j["requested_year"] = e.requested_year;
  j["lookup_year"] = e.lookup_year;
  j["fallback_distance"] = e.fallback_distance;
  j["classification"] = to_string(classify(e, t));
  return j;
}

// --- subcommands ---

struct IngestArgs {
  std::string dir;
};

int cmd_ingest(CommandContext& ctx, const IngestArgs& args) {
  if (ctx.global.out.empty()) throw ValidationError("ingest needs --out for the table snapshot");
  ctx.manifest.inputs.push_back({"ssa_dir", args.dir, sha256_path(args.dir)});
  const NameYearTable table = load_ssa_directory(args.dir);
  Output output(ctx);
  write_snapshot(table, output.stream());
  output.commit();
  const auto range = table.year_range();
  ctx.out << "years " << range->min_year << "-" << range->max_year << "\n"
          << "names " << table.name_count() << "\n"
          << "entries " << table.entry_count() << "\n";
  return 0;
}

struct PfArgs {
  std::string name;
  std::optional<int> year;
  std::optional<int> pub_year;
  ModelConfig model;
  Thresholds thresholds;
};

int cmd_pf(CommandContext& ctx, const PfArgs& args) {
  args.model.validate();
  args.thresholds.validate();
  if (args.year.has_value() == args.pub_year.has_value()) {
    throw ValidationError("exactly one of --year or --pub-year is required");
  }
  const NameYearTable table = load_table(ctx);
  json j;
  if (args.year) {
    j = estimate_json(args.name, p_female(table, args.name, *args.year, args.model),
                      args.thresholds);
  } else {
    j = estimate_json(args.name, shifted_lookup(table, args.name, *args.pub_year, args.model),
                      args.thresholds);
    j["shift"] = {{"publication_year", *args.pub_year}, {"year_shift", args.model.year_shift}};
  }
  Output output(ctx);
  output.stream() << j.dump(2) << '\n';
  output.commit();
  return 0;
}

struct ShiftsArgs {
  int from = 0;
  int to = 0;
  std::vector<std::string> names;
  std::optional<std::size_t> top;
  bool weighted = false;
  bool unstable = false;
  InstabilityConfig instability;
  ModelConfig model;
};

int cmd_shifts(CommandContext& ctx, const ShiftsArgs& args) {
  args.model.validate();
  const SeriesFormat format = series_format_from(ctx.global.format);
  const NameYearTable table = load_table(ctx);
  std::vector<ShiftRecord> records;
  if (!args.names.empty()) {
    for (const auto& n : args.names) {
      records.push_back(gender_shift(table, n, args.from, args.to, args.model));
    }
  } else if (args.unstable) {
    for (const auto& n : find_unstable(table, args.instability, args.model)) {
      records.push_back(gender_shift(table, n, args.from, args.to, args.model));
    }
    if (args.top && records.size() > *args.top) records.resize(*args.top);
  } else {
    const std::size_t k = args.top.value_or(std::max<std::size_t>(1, table.name_count()));
    records = top_shift_names(table, args.from, args.to, k, args.weighted, args.model);
  }

  Output output(ctx);
  std::ostream& os = output.stream();
  if (format == SeriesFormat::Csv) {
    os << "name,p_start,p_end,delta,weight\n";
    for (const auto& r : records) {
      os << detail::csv_field(r.name) << ',' << format_double(r.p_start) << ','
         << format_double(r.p_end) << ',' << format_double(r.delta) << ','
         << format_double(r.weight) << '\n';
    }
  } else {
    json j;
    j["from"] = args.from;
    j["to"] = args.to;
    auto& arr = j["records"] = json::array();
    for (const auto& r : records) {
      arr.push_back({{"name", r.name},
                     {"p_start", r.p_start},
                     {"p_end", r.p_end},
                     {"delta", r.delta},
                     {"weight", r.weight}});
    }
    j["net_female_shift"] = records.empty() ? json(nullptr) : json(net_female_shift(records));
    os << j.dump(2) << '\n';
  }
  output.commit();
  return 0;
}

struct SampleArgs {
  std::optional<std::uint64_t> population;
  double margin = 0.05;
  double confidence = 0.95;
  std::string ids_file;
  std::optional<std::size_t> sample_size;
};

int cmd_sample(CommandContext& ctx, const SampleArgs& args, bool seed_given) {
  std::vector<std::string> ids;
  if (!args.ids_file.empty()) {
    const std::string bytes = read_file(args.ids_file);
    ctx.manifest.inputs.push_back({"ids", args.ids_file, sha256_hex(bytes)});
    std::istringstream in(bytes);
    std::string line;
    while (std::getline(in, line)) {
      const auto id = detail::trim(line);
      if (!id.empty()) ids.emplace_back(id);
    }
    if (ids.empty()) throw ValidationError("ids file '" + args.ids_file + "' holds no ids");
    if (args.population && *args.population != ids.size()) {
      throw ValidationError("--population-size " + std::to_string(*args.population) +
                            " disagrees with " + std::to_string(ids.size()) + " ids in file");
    }
    if (!seed_given) throw ValidationError("--seed is required when drawing a sample");
  } else if (!args.population) {
    throw ValidationError("one of --population-size or --ids-file is required");
  }
  const std::uint64_t population = args.population.value_or(ids.size());
  const SampleSpec spec = sample_size(population, args.margin, args.confidence);
  const TierRecommendation tier = tier_recommendation(population);

  json header;
  header["population_size"] = spec.population_size;
  header["margin"] = spec.margin;
  header["confidence"] = spec.confidence;
  header["z"] = spec.z;
  header["infinite_n"] = spec.infinite_n;
  header["computed_n"] = spec.computed_n;
  header["tier"] = to_string(tier.tier);
  header["tier_rationale"] = tier.rationale;

  std::vector<std::string> drawn;
  if (!ids.empty()) {
    const std::size_t n = args.sample_size.value_or(spec.computed_n);
    drawn = draw_sample(ids, n, ctx.global.seed);
    header["drawn"] = drawn.size();
    header["seed"] = ctx.global.seed;
    ctx.manifest.seed = ctx.global.seed;
  }
  Output output(ctx);
  output.stream() << header.dump() << '\n';
  for (const auto& id : drawn) output.stream() << id << '\n';
  output.commit();
  return 0;
}

struct AnalyzeArgs {
  CorpusFlags corpus;
  std::string estimator = "weighted-mean";
  double unknown_value = 0.5;
  bool display_encoding = false;
  int bin_width = 1;
  bool group_by_venue = false;
  ModelConfig model;
  Thresholds thresholds;
};

int cmd_analyze(CommandContext& ctx, const AnalyzeArgs& args) {
  const SeriesFormat format = series_format_from(ctx.global.format);
  EstimatorConfig config;
  auto est = estimator_from(args.estimator);
  if (!est) throw ValidationError("unknown estimator '" + args.estimator + "'");
  config.estimator = *est;
  config.unknown_value = args.unknown_value;
  if (args.display_encoding) config.display_encoding = DisplayEncoding{};
  config.bin_width = args.bin_width;
  config.group_by_venue = args.group_by_venue;
  config.validate();
  args.model.validate();
  args.thresholds.validate();

  const NameYearTable table = load_table(ctx);
  const auto records = load_corpus(ctx, args.corpus);
  const auto points = annual_share(records, table, args.model, args.thresholds, config);
  Output output(ctx);
  emit_series(points, format, output.stream());
  output.commit();
  return 0;
}

struct BiasArgs {
  CorpusFlags corpus;
  int reference_year = 0;
  int bin_width = 1;
  ModelConfig model;
};

int cmd_bias_report(CommandContext& ctx, const BiasArgs& args) {
  const SeriesFormat format = series_format_from(ctx.global.format);
  args.model.validate();
  const NameYearTable table = load_table(ctx);
  const auto records = load_corpus(ctx, args.corpus);
  const BiasReport report =
      present_bias_report(records, table, args.model, args.reference_year, args.bin_width);
  Output output(ctx);
  emit_series(report, format, output.stream());
  output.commit();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Year-aware first-name gender attribution for bibliographic corpora",
               "gendertime"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  GlobalOptions global;
  app.add_option("--table", global.table,
                 "Table snapshot file or directory of yobYYYY.txt files (default: bundled "
                 "fixture)");
  app.add_option("--out", global.out, "Write output here (plus <out>.manifest.json)");
  app.add_option("--format", global.format, "Output format for series and shifts")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", global.seed, "Seed for sampling");
  app.add_flag("--strict", global.strict, "Abort on the first malformed corpus row");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse SSA year files into a table snapshot");
  ingest_cmd->add_option("ssa_dir", ingest.dir, "Directory of yobYYYY.txt files")->required();

  PfArgs pf;
  auto* pf_cmd = app.add_subcommand("pf", "Print p(F) for a first name");
  pf_cmd->add_option("name", pf.name, "First name")->required();
  auto* year_opt = pf_cmd->add_option("--year", pf.year, "Birth year to look up");
  auto* pub_opt = pf_cmd->add_option("--pub-year", pf.pub_year,
                                     "Publication year; looked up at year minus --year-shift");
  year_opt->excludes(pub_opt);
  add_model_flags(pf_cmd, pf.model);
  add_threshold_flags(pf_cmd, pf.thresholds);

  ShiftsArgs shifts;
  auto* shifts_cmd = app.add_subcommand("shifts", "Per-name p(F) change between two years");
  shifts_cmd->add_option("--from", shifts.from, "Start year")->required();
  shifts_cmd->add_option("--to", shifts.to, "End year")->required();
  auto* name_opt = shifts_cmd->add_option("--name", shifts.names, "Restrict to these names");
  shifts_cmd->add_option("--top", shifts.top, "Keep the k largest shifts")
      ->check(CLI::PositiveNumber);
  shifts_cmd->add_flag("--weighted", shifts.weighted, "Rank by |delta| times births");
  auto* unstable_opt =
      shifts_cmd->add_flag("--unstable", shifts.unstable, "Use the gender-unstable name set");
  name_opt->excludes(unstable_opt);
  shifts_cmd->add_option("--sample-years", shifts.instability.sample_years,
                         "Years scanned for instability")
      ->delimiter(',');
  shifts_cmd->add_option("--range-threshold", shifts.instability.range_threshold,
                         "Minimum p(F) range across sample years");
  shifts_cmd->add_option("--min-births", shifts.instability.min_total_births,
                         "Minimum births summed over sample years");
  add_model_flags(shifts_cmd, shifts.model);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample size and seeded sample draw");
  sample_cmd->add_option("--population-size", sample.population, "Source population size N")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--margin", sample.margin, "Margin of error");
  sample_cmd->add_option("--confidence", sample.confidence, "Confidence level");
  sample_cmd->add_option("--ids-file", sample.ids_file, "One id per line; draws a sample");
  sample_cmd->add_option("--sample-size", sample.sample_size,
                         "Draw this many ids instead of the computed size");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Women's share per year bin");
  add_corpus_flags(analyze_cmd, analyze.corpus, true);
  analyze_cmd->add_option("--estimator", analyze.estimator, "Aggregation rule")
      ->check(CLI::IsMember({"weighted-mean", "classified-share"}));
  analyze_cmd->add_option("--unknown-value", analyze.unknown_value,
                          "Value of an unidentified author in the weighted mean");
  analyze_cmd->add_flag("--display-encoding", analyze.display_encoding,
                        "Plot identified authors at 0.95/0.05, unidentified at 0.5");
  analyze_cmd->add_option("--bin-width", analyze.bin_width, "Years per bin")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--group-by-venue", analyze.group_by_venue, "One series per venue");
  add_model_flags(analyze_cmd, analyze.model);
  add_threshold_flags(analyze_cmd, analyze.thresholds);

  BiasArgs bias;
  auto* bias_cmd =
      app.add_subcommand("bias-report", "Year-shifted vs. fixed-reference-year predictions");
  add_corpus_flags(bias_cmd, bias.corpus, false);
  bias_cmd->add_option("--reference-year", bias.reference_year,
                       "Year every static lookup is pinned to")
      ->required();
  bias_cmd->add_option("--bin-width", bias.bin_width, "Years per bin")->check(CLI::PositiveNumber);
  add_model_flags(bias_cmd, bias.model);

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CLI::App* command = app.get_subcommands().front();
  CommandContext ctx{global, out, err, {}};
  ctx.manifest.subcommand = command->get_name();
  ctx.manifest.tool_version = std::string(tool_version());
  ctx.manifest.table_snapshot_version = kSnapshotVersion;
  record_flags(app, ctx.manifest.flags);
  record_flags(*command, ctx.manifest.flags);

  try {
    if (command == ingest_cmd) return cmd_ingest(ctx, ingest);
    if (command == pf_cmd) return cmd_pf(ctx, pf);
    if (command == shifts_cmd) return cmd_shifts(ctx, shifts);
    if (command == sample_cmd) return cmd_sample(ctx, sample, seed_opt->count() > 0);
    if (command == analyze_cmd) return cmd_analyze(ctx, analyze);
    if (command == bias_cmd) return cmd_bias_report(ctx, bias);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace gendertime
