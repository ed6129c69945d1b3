#include "gendertime/trend.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"

using gendertime::detail::format_double;
#include "gendertime/errors.hpp"

namespace gendertime {

std::string_view to_string(Estimator e) {
  return e == Estimator::WeightedMean ? "weighted-mean" : "classified-share";
}

std::optional<Estimator> estimator_from(std::string_view s) {
  if (s == "weighted-mean") return Estimator::WeightedMean;
  if (s == "classified-share") return Estimator::ClassifiedShare;
  return std::nullopt;
}

void EstimatorConfig::validate() const {
  if (!(unknown_value >= 0.0 && unknown_value <= 1.0)) {
    throw ValidationError("unknown_value must be in [0, 1]");
  }
  if (bin_width < 1) throw ValidationError("bin_width must be >= 1");
}

std::string Bin::label() const {
  if (first_year == last_year) return std::to_string(first_year);
  return std::to_string(first_year) + "-" + std::to_string(last_year);
}

Bin bin_for(int year, int bin_width, std::optional<std::string> venue) {
  const int offset = ((year % bin_width) + bin_width) % bin_width;
  Bin b;
  b.venue = std::move(venue);
  b.first_year = year - offset;
  b.last_year = b.first_year + bin_width - 1;
  return b;
}

namespace {

struct MentionValue {
  double probability;  // weighted-mean contribution
  Gender gender;
};

MentionValue resolve(const AuthorMention& m, int publication_year, const NameYearTable& table,
                     const ModelConfig& model, const Thresholds& thresholds,
                     double unknown_value) {
  if (m.override_gender) {
    switch (*m.override_gender) {
      case LedgerGender::F: return {1.0, Gender::Female};
      case LedgerGender::M: return {0.0, Gender::Male};
      case LedgerGender::U: return {unknown_value, Gender::Unidentified};
    }
  }
  if (m.first_name.initial_only()) return {unknown_value, Gender::Unidentified};
  const GenderEstimate est = shifted_lookup(table, m.first_name.value, publication_year, model);
  if (!est.known()) return {unknown_value, Gender::Unidentified};
  return {*est.p_female, classify(*est.p_female, thresholds)};
}

struct BinTally {
  double sum = 0.0;
  std::size_t n = 0;
  std::size_t female = 0;
  std::size_t male = 0;
};

}  // namespace

std::vector<TrendPoint> annual_share(const std::vector<CorpusRecord>& records,
                                     const NameYearTable& table, const ModelConfig& model,
                                     const Thresholds& thresholds,
                                     const EstimatorConfig& config) {
  model.validate();
  thresholds.validate();
  config.validate();

  std::map<Bin, BinTally> tallies;
  for (const auto& rec : records) {
    if (rec.authors.empty()) continue;
    BinTally& t = tallies[bin_for(rec.publication_year, config.bin_width,
                                  config.group_by_venue ? std::optional(rec.venue)
                                                        : std::nullopt)];
    for (const auto& m : rec.authors) {
      const MentionValue v =
          resolve(m, rec.publication_year, table, model, thresholds, config.unknown_value);
      double contribution = v.probability;
      if (config.display_encoding) {
        const DisplayEncoding& enc = *config.display_encoding;
        contribution = v.gender == Gender::Female ? enc.female
                       : v.gender == Gender::Male ? enc.male
                                                  : enc.unknown;
      }
      t.sum += contribution;
      ++t.n;
      if (v.gender == Gender::Female) ++t.female;
      if (v.gender == Gender::Male) ++t.male;
    }
  }

  std::vector<TrendPoint> out;
  out.reserve(tallies.size());
  for (const auto& [bin, t] : tallies) {
    TrendPoint p;
    p.bin = bin;
    p.estimator = config.estimator;
    p.n_authors = t.n;
    p.n_identified = t.female + t.male;
    p.n_unidentified = t.n - p.n_identified;
    if (config.estimator == Estimator::WeightedMean) {
      p.share_female = t.sum / static_cast<double>(t.n);
    } else if (p.n_identified > 0) {
      p.share_female = static_cast<double>(t.female) / static_cast<double>(p.n_identified);
    }
    out.push_back(std::move(p));
  }
  return out;
}

BiasReport present_bias_report(const std::vector<CorpusRecord>& records,
                               const NameYearTable& table, const ModelConfig& model,
                               int reference_year, int bin_width) {
  model.validate();
  if (bin_width < 1) throw ValidationError("bin_width must be >= 1");
  const auto range = table.year_range();
  if (!range || reference_year < range->min_year || reference_year > range->max_year) {
    throw ValidationError("reference year " + std::to_string(reference_year) +
                          " outside the table's year range");
  }
  constexpr double kUnknown = 0.5;
  struct Sums {
    double temporal = 0.0;
    double fixed = 0.0;
    std::size_t n = 0;
  };
  std::map<Bin, Sums> sums;
  for (const auto& rec : records) {
    if (rec.authors.empty()) continue;
    Sums& s = sums[bin_for(rec.publication_year, bin_width)];
    for (const auto& m : rec.authors) {
      ++s.n;
      if (m.first_name.initial_only()) {
        s.temporal += kUnknown;
        s.fixed += kUnknown;
        continue;
      }
      const auto t = shifted_lookup(table, m.first_name.value, rec.publication_year, model);
      const auto f = p_female(table, m.first_name.value, reference_year, model);
      s.temporal += t.p_female.value_or(kUnknown);
      s.fixed += f.p_female.value_or(kUnknown);
    }
  }
  BiasReport report;
  report.reference_year = reference_year;
  double gap_sum = 0.0;
  for (const auto& [bin, s] : sums) {
    BiasBin b;
    b.bin = bin;
    b.n_authors = s.n;
    b.temporal_share = s.temporal / static_cast<double>(s.n);
    b.static_share = s.fixed / static_cast<double>(s.n);
    b.gap = b.static_share - b.temporal_share;
    gap_sum += b.gap;
    if (report.bins.empty() || std::abs(b.gap) > std::abs(report.max_gap)) report.max_gap = b.gap;
    report.bins.push_back(b);
  }
  if (!report.bins.empty()) report.mean_gap = gap_sum / static_cast<double>(report.bins.size());
  return report;
}

SeriesFormat series_format_from(std::string_view s) {
  if (s == "csv") return SeriesFormat::Csv;
  if (s == "json") return SeriesFormat::Json;
  throw ValidationError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

namespace {

bool any_venue(const std::vector<TrendPoint>& points) {
  for (const auto& p : points) {
    if (p.bin.venue) return true;
  }
  return false;
}

nlohmann::ordered_json bin_json(const Bin& b) {
  nlohmann::ordered_json j;
  j["bin"] = b.label();
  if (b.venue) j["venue"] = *b.venue;
  j["first_year"] = b.first_year;
  j["last_year"] = b.last_year;
  return j;
}

}  // namespace

void emit_series(const std::vector<TrendPoint>& points, SeriesFormat format, std::ostream& out) {
  if (format == SeriesFormat::Csv) {
    const bool venues = any_venue(points);
    if (venues) out << "venue,";
    out << "bin,share_female,n_authors,n_identified,n_unidentified,estimator\n";
    for (const auto& p : points) {
      if (venues) out << detail::csv_field(p.bin.venue.value_or("")) << ',';
      out << p.bin.label() << ','
          << (p.share_female ? format_double(*p.share_female) : std::string()) << ','
          << p.n_authors << ',' << p.n_identified << ',' << p.n_unidentified << ','
          << to_string(p.estimator) << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json j = bin_json(p.bin);
    j["share_female"] = p.share_female ? nlohmann::ordered_json(*p.share_female) : nullptr;
    j["n_authors"] = p.n_authors;
    j["n_identified"] = p.n_identified;
    j["n_unidentified"] = p.n_unidentified;
    j["estimator"] = to_string(p.estimator);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void emit_series(const BiasReport& report, SeriesFormat format, std::ostream& out) {
  if (format == SeriesFormat::Csv) {
    out << "bin,temporal_share,static_share,gap,n_authors\n";
    for (const auto& b : report.bins) {
      out << b.bin.label() << ',' << format_double(b.temporal_share) << ','
          << format_double(b.static_share) << ',' << format_double(b.gap) << ',' << b.n_authors
          << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["reference_year"] = report.reference_year;
  j["mean_gap"] = report.mean_gap;
  j["max_gap"] = report.max_gap;
  auto& bins = j["bins"] = nlohmann::ordered_json::array();
  for (const auto& b : report.bins) {
    nlohmann::ordered_json e = bin_json(b.bin);
    e["temporal_share"] = b.temporal_share;
    e["static_share"] = b.static_share;
    e["gap"] = b.gap;
    e["n_authors"] = b.n_authors;
    bins.push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
}

std::vector<TrendPoint> parse_series_json(std::string_view text) {
  std::vector<TrendPoint> points;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw ValidationError("series JSON must be an array");
    for (const auto& j : arr) {
      TrendPoint p;
      p.bin.first_year = j.at("first_year").get<int>();
      p.bin.last_year = j.at("last_year").get<int>();
      if (j.contains("venue")) p.bin.venue = j.at("venue").get<std::string>();
      if (!j.at("share_female").is_null()) p.share_female = j.at("share_female").get<double>();
      p.n_authors = j.at("n_authors").get<std::size_t>();
      p.n_identified = j.at("n_identified").get<std::size_t>();
      p.n_unidentified = j.at("n_unidentified").get<std::size_t>();
      auto est = estimator_from(j.at("estimator").get<std::string>());
      if (!est) throw ValidationError("unknown estimator in series JSON");
      p.estimator = *est;
      points.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed series JSON: ") + e.what());
  }
  return points;
}

}  // namespace gendertime
