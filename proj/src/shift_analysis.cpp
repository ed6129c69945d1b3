#include "gendertime/shift_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "gendertime/errors.hpp"
#include "gendertime/normalize.hpp"

namespace gendertime {

void InstabilityConfig::validate() const {
  if (sample_years.empty()) throw ValidationError("sample_years must not be empty");
  if (!std::is_sorted(sample_years.begin(), sample_years.end()) ||
      std::adjacent_find(sample_years.begin(), sample_years.end()) != sample_years.end()) {
    throw ValidationError("sample_years must be strictly increasing");
  }
  if (!(range_threshold > 0.0 && range_threshold <= 1.0)) {
    throw ValidationError("range_threshold must be in (0, 1]");
  }
}

namespace {

std::optional<ShiftRecord> try_shift(const NameYearTable& table, const std::string& name,
                                     int from_year, int to_year, const ModelConfig& model) {
  const GenderEstimate start = p_female(table, name, from_year, model);
  const GenderEstimate end = p_female(table, name, to_year, model);
  if (!start.known() || !end.known()) return std::nullopt;
  ShiftRecord r;
  r.name = name;
  r.p_start = *start.p_female;
  r.p_end = *end.p_female;
  r.delta = r.p_end - r.p_start;
  r.weight = (static_cast<double>(start.female_count + start.male_count) +
              static_cast<double>(end.female_count + end.male_count)) /
             2.0;
  return r;
}

}  // namespace

ShiftRecord gender_shift(const NameYearTable& table, std::string_view name, int from_year,
                         int to_year, const ModelConfig& config) {
  const std::string key = normalize_name(name);
  if (!p_female(table, key, from_year, config).known()) {
    throw EndpointMissingError(key, from_year);
  }
  auto r = try_shift(table, key, from_year, to_year, config);
  if (!r) throw EndpointMissingError(key, to_year);
  return *r;
}

std::vector<std::string> find_unstable(const NameYearTable& table,
                                       const InstabilityConfig& config,
                                       const ModelConfig& model) {
  config.validate();
  struct Hit {
    const std::string* name;
    double range;
  };
  std::vector<Hit> hits;
  for (const auto& [name, years] : table.names()) {
    double lo = 1.0;
    double hi = 0.0;
    std::uint64_t births = 0;
    for (int y : config.sample_years) {
      const GenderEstimate e = p_female(table, name, y, model);
      if (!e.known()) continue;
      lo = std::min(lo, *e.p_female);
      hi = std::max(hi, *e.p_female);
      births += e.female_count + e.male_count;
    }
    if (hi < lo) continue;  // never known
    const double range = hi - lo;
    if (range >= config.range_threshold && births >= config.min_total_births) {
      hits.push_back({&name, range});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.range != b.range) return a.range > b.range;
    return *a.name < *b.name;
  });
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(*h.name);
  return out;
}

std::vector<ShiftRecord> top_shift_names(const NameYearTable& table, int from_year, int to_year,
                                         std::size_t k, bool weighted,
                                         const ModelConfig& model) {
  if (k < 1) throw ValidationError("k must be >= 1");
  struct Ranked {
    double key;
    ShiftRecord record;
  };
  std::vector<Ranked> ranked;
  for (const auto& [name, years] : table.names()) {
    auto r = try_shift(table, name, from_year, to_year, model);
    if (!r) continue;
    const double key = weighted ? std::abs(r->delta) * r->weight : std::abs(r->delta);
    ranked.push_back({key, std::move(*r)});
  }
  const std::size_t take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), [](const Ranked& a, const Ranked& b) {
                      if (a.key != b.key) return a.key > b.key;
                      return a.record.name < b.record.name;
                    });
  std::vector<ShiftRecord> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(std::move(ranked[i].record));
  return out;
}

double net_female_shift(std::span<const ShiftRecord> shifts) {
  if (shifts.empty()) throw ValidationError("net female shift of an empty name list is undefined");
  double weighted_sum = 0.0;
  double weight_sum = 0.0;
  for (const auto& s : shifts) {
    weighted_sum += s.delta * s.weight;
    weight_sum += s.weight;
  }
  if (!(weight_sum > 0.0)) throw ValidationError("net female shift needs a positive total weight");
  return weighted_sum / weight_sum;
}

double net_female_shift(const NameYearTable& table, std::span<const std::string> names,
                        int from_year, int to_year, const ModelConfig& model) {
  std::vector<ShiftRecord> shifts;
  shifts.reserve(names.size());
  for (const auto& n : names) shifts.push_back(gender_shift(table, n, from_year, to_year, model));
  return net_female_shift(shifts);
}

}  // namespace gendertime
