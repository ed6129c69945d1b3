#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gendertime/corpus.hpp"
#include "gendertime/gender_model.hpp"
#include "gendertime/name_table.hpp"

namespace gendertime {

enum class Estimator { WeightedMean, ClassifiedShare };

std::string_view to_string(Estimator e);
std::optional<Estimator> estimator_from(std::string_view s);

// Plot encoding: each mention is classified, then drawn at one of three
// fixed levels instead of its probability.
struct DisplayEncoding {
  double female = 0.95;
  double male = 0.05;
  double unknown = 0.5;
};

struct EstimatorConfig {
  Estimator estimator = Estimator::WeightedMean;
  double unknown_value = 0.5;
  std::optional<DisplayEncoding> display_encoding;
  int bin_width = 1;
  bool group_by_venue = false;

  void validate() const;
};

// Bins are aligned to multiples of bin_width: with width 5, 1972 falls in
// [1970, 1974].
struct Bin {
  std::optional<std::string> venue;  // set only when grouping by venue
  int first_year = 0;
  int last_year = 0;

  std::string label() const;  // "1970" or "1970-1974"; venue not included
  auto operator<=>(const Bin&) const = default;
};

Bin bin_for(int year, int bin_width, std::optional<std::string> venue = std::nullopt);

struct TrendPoint {
  Bin bin;
  // Empty when ClassifiedShare has no identified mention in the bin.
  std::optional<double> share_female;
  std::size_t n_authors = 0;
  std::size_t n_identified = 0;
  std::size_t n_unidentified = 0;
  Estimator estimator = Estimator::WeightedMean;

  bool operator==(const TrendPoint&) const = default;
};

// Per-bin women's share over author mentions. Overrides take precedence over
// the name table; names are looked up with shifted_lookup. Bins without
// mentions are omitted. Output is sorted by bin.
std::vector<TrendPoint> annual_share(const std::vector<CorpusRecord>& records,
                                     const NameYearTable& table, const ModelConfig& model,
                                     const Thresholds& thresholds,
                                     const EstimatorConfig& estimator);

struct BiasBin {
  Bin bin;
  double temporal_share = 0.0;
  double static_share = 0.0;
  double gap = 0.0;  // static_share - temporal_share
  std::size_t n_authors = 0;
};

struct BiasReport {
  int reference_year = 0;
  std::vector<BiasBin> bins;
  double mean_gap = 0.0;
  double max_gap = 0.0;  // largest absolute gap, sign kept
};

// Compares the year-shifted lookup against a static predictor that pins
// every lookup to reference_year. Both sides are weighted means with unknown
// names at 0.5; override ledgers are ignored so only the name tables differ.
BiasReport present_bias_report(const std::vector<CorpusRecord>& records,
                               const NameYearTable& table, const ModelConfig& model,
                               int reference_year, int bin_width = 1);

enum class SeriesFormat { Csv, Json };

// Throws ValidationError for anything other than "csv" or "json".
SeriesFormat series_format_from(std::string_view s);

void emit_series(const std::vector<TrendPoint>& points, SeriesFormat format, std::ostream& out);
void emit_series(const BiasReport& report, SeriesFormat format, std::ostream& out);

// Inverse of emit_series(points, Json).
std::vector<TrendPoint> parse_series_json(std::string_view json);

}  // namespace gendertime
