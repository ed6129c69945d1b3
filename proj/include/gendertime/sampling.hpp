#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gendertime {

struct SampleSpec {
  std::uint64_t population_size = 0;
  double margin = 0.05;
  double confidence = 0.95;
  double z = 0.0;             // two-sided normal quantile for `confidence`
  double infinite_n = 0.0;    // z^2 * 0.25 / e^2, before rounding and correction
  std::uint64_t computed_n = 0;
};

// Cochran's worst-case (p = 0.5) sample size with finite population
// correction. Both stages round up:
//   n0 = ceil(z^2 * 0.25 / e^2),   n = ceil(n0 / (1 + (n0 - 1) / N))
// so the result reaches n0 itself for large N.
// Throws ValidationError for N < 1, margin outside (0, 0.5] or confidence
// outside (0.5, 1).
SampleSpec sample_size(std::uint64_t population_size, double margin = 0.05,
                       double confidence = 0.95);

// Positions (ascending) of a simple random sample without replacement of
// `n` out of `population` slots. Depends only on (population, n, seed):
// a partial Fisher-Yates shuffle driven by std::mt19937_64 seeded with
// `seed`, with bounded integers drawn by rejection so the result does not
// depend on the standard library's distribution implementations.
std::vector<std::size_t> sample_positions(std::size_t population, std::size_t n,
                                          std::uint64_t seed);

// The ids at sample_positions(ids.size(), n, seed), in input order.
// Throws ValidationError when n > ids.size().
std::vector<std::string> draw_sample(std::span<const std::string> ids, std::size_t n,
                                     std::uint64_t seed);

// Unique canonical_full_name() keys, sorted.
std::vector<std::string> dedup_authors(std::span<const std::string> mentions);

enum class Tier { Qualitative, Mixed, MixedOrSampled, Sampled };

struct TierRecommendation {
  Tier tier = Tier::Qualitative;
  std::string_view rationale;
};

std::string_view to_string(Tier tier);

// N < 100: qualitative; 100..500: mixed; 501..1000: mixed or sampled;
// above 1000: sampled. Throws ValidationError for N < 1.
TierRecommendation tier_recommendation(std::uint64_t population_size);

}  // namespace gendertime
