#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gendertime/name_table.hpp"

namespace gendertime {

struct GenderEstimate {
  // Empty iff female_count + male_count == 0.
  std::optional<double> p_female;
  std::uint64_t female_count = 0;
  std::uint64_t male_count = 0;
  int requested_year = 0;  // year the caller (or the shift rule) asked for
  int lookup_year = 0;     // year whose counts were used
  int fallback_distance = 0;

  bool known() const noexcept { return p_female.has_value(); }
  bool operator==(const GenderEstimate&) const = default;
};

struct ModelConfig {
  int year_shift = 30;
  int max_fallback_distance = 10;

  void validate() const;
};

struct Thresholds {
  double tau_female = 0.8;
  double tau_male = 0.2;

  void validate() const;
};

enum class Gender { Female, Male, Unidentified };

std::string_view to_string(Gender g);

// p(F) for `name` in `year`. When the exact year has no entry for the name,
// the nearest year within max_fallback_distance is used, the earlier year
// winning ties. The name is normalized before lookup.
GenderEstimate p_female(const NameYearTable& table, std::string_view name, int year,
                        const ModelConfig& config = {});

// p(F) at publication_year - year_shift, clamped to the first table year.
// fallback_distance counts the distance from the shifted year, so a clamp is
// visible in the result.
GenderEstimate shifted_lookup(const NameYearTable& table, std::string_view name,
                              int publication_year, const ModelConfig& config = {});

Gender classify(const GenderEstimate& estimate, const Thresholds& thresholds = {});
Gender classify(double p_female, const Thresholds& thresholds = {});

}  // namespace gendertime
