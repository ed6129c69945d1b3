#include "gendertime/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <boost/math/distributions/normal.hpp>

#include "gendertime/errors.hpp"
#include "gendertime/corpus.hpp"

namespace gendertime {
namespace {

// Uniform integer in [0, bound) from raw 64-bit output; rejects the low
// 2^64 mod bound values so every residue is equally likely.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

SampleSpec sample_size(std::uint64_t population_size, double margin, double confidence) {
  if (population_size < 1) throw ValidationError("population size must be >= 1");
  if (!(margin > 0.0 && margin <= 0.5)) throw ValidationError("margin must be in (0, 0.5]");
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw ValidationError("confidence must be in (0.5, 1)");
  }
  SampleSpec spec;
  spec.population_size = population_size;
  spec.margin = margin;
  spec.confidence = confidence;

  const boost::math::normal_distribution<double> standard;
  spec.z = boost::math::quantile(standard, 1.0 - (1.0 - confidence) / 2.0);
  spec.infinite_n = spec.z * spec.z * 0.25 / (margin * margin);
  const double n0 = std::ceil(spec.infinite_n);
  const double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population_size));
  const auto rounded = static_cast<std::uint64_t>(std::ceil(n));
  spec.computed_n = std::clamp<std::uint64_t>(rounded, 1, population_size);
  return spec;
}

std::vector<std::size_t> sample_positions(std::size_t population, std::size_t n,
                                          std::uint64_t seed) {
  if (n > population) {
    throw ValidationError("sample size " + std::to_string(n) + " exceeds population " +
                          std::to_string(population));
  }
  std::vector<std::size_t> slots(population);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + bounded(gen, population - i);
    std::swap(slots[i], slots[j]);
  }
  slots.resize(n);
  std::sort(slots.begin(), slots.end());
  return slots;
}

std::vector<std::string> draw_sample(std::span<const std::string> ids, std::size_t n,
                                     std::uint64_t seed) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t pos : sample_positions(ids.size(), n, seed)) out.push_back(ids[pos]);
  return out;
}

std::vector<std::string> dedup_authors(std::span<const std::string> mentions) {
  std::set<std::string> unique;
  for (const auto& m : mentions) {
    std::string key = canonical_full_name(m);
    if (!key.empty()) unique.insert(std::move(key));
  }
  return {unique.begin(), unique.end()};
}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::Qualitative: return "qualitative";
    case Tier::Mixed: return "mixed";
    case Tier::MixedOrSampled: return "mixed-or-sampled";
    case Tier::Sampled: return "sampled";
  }
  return "sampled";
}

TierRecommendation tier_recommendation(std::uint64_t population_size) {
  if (population_size < 1) throw ValidationError("population size must be >= 1");
  if (population_size < 100) {
    return {Tier::Qualitative, "small group: look up every member individually"};
  }
  if (population_size <= 500) {
    return {Tier::Mixed, "individual lookups supplemented by year-shifted name-table p(F)"};
  }
  if (population_size <= 1000) {
    return {Tier::MixedOrSampled,
            "mixed lookups are still feasible; consider sampling the population"};
  }
  return {Tier::Sampled, "draw a statistical sample, then apply mixed lookups to it"};
}

}  // namespace gendertime
