#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gendertime/errors.hpp"
#include "gendertime/sampling.hpp"
#include "support/synthetic.hpp"

using namespace gendertime;

namespace {

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("id" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("sample_size anchors") {
  const auto s600 = sample_size(600);
  CHECK(s600.computed_n == 235);
  CHECK(s600.computed_n >= 233);
  CHECK(s600.computed_n <= 243);
  CHECK(s600.z == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(s600.infinite_n == doctest::Approx(384.14588206941244).epsilon(1e-12));

  CHECK(sample_size(7358).computed_n == 366);
  CHECK(sample_size(10).computed_n == 10);
  CHECK(sample_size(1).computed_n == 1);
  CHECK(sample_size(1000000).computed_n == 385);
  CHECK(sample_size(1000000000ULL).computed_n == 385);
  CHECK(sample_size(600, 0.03, 0.99).computed_n > 235);
}

TEST_CASE("sample_size validation") {
  CHECK_THROWS_AS(sample_size(0), ValidationError);
  CHECK_THROWS_AS(sample_size(600, 0.0), ValidationError);
  CHECK_THROWS_AS(sample_size(600, 0.6), ValidationError);
  CHECK_THROWS_AS(sample_size(600, 0.05, 1.0), ValidationError);
  CHECK_THROWS_AS(sample_size(600, 0.05, 0.5), ValidationError);
}

TEST_CASE("property: sample_size bounds and monotonicity") {
  std::uint64_t prev = 0;
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const auto s = sample_size(n);
    CHECK(s.computed_n >= 1);
    CHECK(s.computed_n <= n);
    CHECK(s.computed_n <= 385);
    CHECK(s.computed_n >= prev);
    prev = s.computed_n;
  }
}

TEST_CASE("draw_sample") {
  const auto population = ids(7358);
  SUBCASE("determinism") {
    CHECK(draw_sample(population, 480, 42) == draw_sample(population, 480, 42));
    CHECK(draw_sample(population, 480, 42) != draw_sample(population, 480, 43));
  }
  SUBCASE("distinct members of the population, in input order") {
    const auto s = draw_sample(population, 480, 7);
    CHECK(s.size() == 480);
    CHECK(std::set<std::string>(s.begin(), s.end()).size() == 480);
    std::vector<std::size_t> pos;
    for (const auto& id : s) pos.push_back(std::stoul(id.substr(2)));
    CHECK(std::is_sorted(pos.begin(), pos.end()));
  }
  SUBCASE("n equal to the population returns everything") {
    const auto small = ids(10);
    CHECK(draw_sample(small, 10, 1) == small);
  }
  SUBCASE("n = 0 and oversize") {
    CHECK(draw_sample(population, 0, 1).empty());
    CHECK_THROWS_AS(draw_sample(ids(5), 6, 1), ValidationError);
  }
  SUBCASE("positions depend only on size, n and seed") {
    std::vector<std::string> other;
    for (std::size_t i = 0; i < 300; ++i) other.push_back("other-" + std::to_string(i));
    const auto a = draw_sample(ids(300), 40, 99);
    const auto b = draw_sample(other, 40, 99);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].substr(2) == b[i].substr(6));
    }
  }
}

TEST_CASE("property: sampling is roughly uniform") {
  // Every slot of a 20-element population should be picked about n/N of the
  // time across seeds.
  std::vector<int> hits(20, 0);
  const int trials = 20000;
  for (int seed = 0; seed < trials; ++seed) {
    for (auto p : sample_positions(20, 5, static_cast<std::uint64_t>(seed))) ++hits[p];
  }
  const double expected = trials * 5.0 / 20.0;
  for (int h : hits) CHECK(std::abs(h - expected) < 0.05 * expected);
}

TEST_CASE("dedup_authors") {
  const std::vector<std::string> mentions{"Jean E. Sammet", "SAMMET, JEAN E.",
                                          "Jean  E.  Sammet ", "Jean Sammet"};
  CHECK(dedup_authors(mentions) == std::vector<std::string>{"jean e. sammet", "jean sammet"});

  std::vector<std::string> all;
  for (const auto& r : testing::workflow_corpus_480()) {
    for (const auto& a : r.authors) all.push_back(a.raw);
  }
  CHECK(dedup_authors(all).size() == 660);
}

TEST_CASE("tier_recommendation") {
  CHECK(tier_recommendation(1).tier == Tier::Qualitative);
  CHECK(tier_recommendation(99).tier == Tier::Qualitative);
  CHECK(tier_recommendation(100).tier == Tier::Mixed);
  CHECK(tier_recommendation(500).tier == Tier::Mixed);
  CHECK(tier_recommendation(501).tier == Tier::MixedOrSampled);
  CHECK(tier_recommendation(1000).tier == Tier::MixedOrSampled);
  CHECK(tier_recommendation(1001).tier == Tier::Sampled);
  CHECK(tier_recommendation(7358).tier == Tier::Sampled);
  CHECK_FALSE(tier_recommendation(7358).rationale.empty());
  CHECK_THROWS_AS(tier_recommendation(0), ValidationError);
  CHECK(to_string(Tier::MixedOrSampled) != to_string(Tier::Mixed));

  // Monotone: the tier never moves back as N grows.
  auto rank = [](Tier t) { return static_cast<int>(t); };
  int prev = 0;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const int r = rank(tier_recommendation(n).tier);
    CHECK(r >= prev);
    prev = r;
  }
}
