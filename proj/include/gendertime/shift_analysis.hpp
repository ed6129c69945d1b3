#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gendertime/gender_model.hpp"
#include "gendertime/name_table.hpp"

namespace gendertime {

struct ShiftRecord {
  std::string name;
  double p_start = 0.0;
  double p_end = 0.0;
  double delta = 0.0;   // p_end - p_start
  double weight = 0.0;  // mean total births over the two endpoint years

  bool operator==(const ShiftRecord&) const = default;
};

struct InstabilityConfig {
  std::vector<int> sample_years{1900, 1925, 1950, 1975, 2000};
  double range_threshold = 0.3;
  std::uint64_t min_total_births = 500;

  void validate() const;
};

// Throws EndpointMissingError when either endpoint is Unknown. Endpoint order
// is free: swapping the years negates delta.
ShiftRecord gender_shift(const NameYearTable& table, std::string_view name, int from_year,
                         int to_year, const ModelConfig& config = {});

// Names whose p(F) range (max - min over the sample years where the name is
// known) reaches range_threshold and whose births summed over those years
// reach min_total_births. Sorted by descending range, then name.
std::vector<std::string> find_unstable(const NameYearTable& table,
                                       const InstabilityConfig& config = {},
                                       const ModelConfig& model = {});

// The k names with the largest |delta| (or |delta| * weight when weighted)
// among names known at both years. Returns fewer than k when fewer qualify.
std::vector<ShiftRecord> top_shift_names(const NameYearTable& table, int from_year,
                                         int to_year, std::size_t k, bool weighted,
                                         const ModelConfig& model = {});

// Weighted mean of deltas: sum(delta * weight) / sum(weight).
double net_female_shift(std::span<const ShiftRecord> shifts);
double net_female_shift(const NameYearTable& table, std::span<const std::string> names,
                        int from_year, int to_year, const ModelConfig& model = {});

}  // namespace gendertime
