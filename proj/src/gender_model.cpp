#include "gendertime/gender_model.hpp"

#include <cstdlib>
#include <iterator>
#include <string>

#include "gendertime/errors.hpp"
#include "gendertime/normalize.hpp"

namespace gendertime {

void ModelConfig::validate() const {
  if (year_shift < 0) throw ValidationError("year_shift must be >= 0");
  if (max_fallback_distance < 0) throw ValidationError("max_fallback_distance must be >= 0");
}

void Thresholds::validate() const {
  if (!(0.0 <= tau_male && tau_male < tau_female && tau_female <= 1.0)) {
    throw ValidationError("thresholds must satisfy 0 <= tau_male < tau_female <= 1");
  }
}

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Female: return "female";
    case Gender::Male: return "male";
    case Gender::Unidentified: return "unidentified";
  }
  return "unidentified";
}

GenderEstimate p_female(const NameYearTable& table, std::string_view name, int year,
                        const ModelConfig& config) {
  GenderEstimate est;
  est.requested_year = year;
  est.lookup_year = year;

  const auto* years = table.years_for(normalize_name(name));
  if (!years || years->empty()) return est;

  auto after = years->lower_bound(year);
  auto chosen = years->end();
  int distance = 0;
  if (after != years->end() && after->first == year) {
    chosen = after;
  } else {
    if (after != years->begin()) {
      auto before = std::prev(after);
      chosen = before;
      distance = year - before->first;
    }
    // Strict comparison: the earlier year wins ties.
    if (after != years->end() && (chosen == years->end() || after->first - year < distance)) {
      chosen = after;
      distance = after->first - year;
    }
    if (distance > config.max_fallback_distance) return est;
  }

  const BirthCounts& c = chosen->second;
  est.female_count = c.female;
  est.male_count = c.male;
  est.lookup_year = chosen->first;
  est.fallback_distance = distance;
  if (c.total() > 0) {
    est.p_female = static_cast<double>(c.female) / static_cast<double>(c.total());
  }
  return est;
}

GenderEstimate shifted_lookup(const NameYearTable& table, std::string_view name,
                              int publication_year, const ModelConfig& config) {
  const int target = publication_year - config.year_shift;
  int year = target;
  if (auto range = table.year_range(); range && year < range->min_year) {
    year = range->min_year;
  }
  GenderEstimate est = p_female(table, name, year, config);
  est.requested_year = target;
  if (!est.known()) est.lookup_year = year;
  est.fallback_distance = std::abs(est.lookup_year - target);
  return est;
}

Gender classify(double p, const Thresholds& thresholds) {
  if (p >= thresholds.tau_female) return Gender::Female;
  if (p <= thresholds.tau_male) return Gender::Male;
  return Gender::Unidentified;
}

Gender classify(const GenderEstimate& estimate, const Thresholds& thresholds) {
  if (!estimate.known()) return Gender::Unidentified;
  return classify(*estimate.p_female, thresholds);
}

}  // namespace gendertime
