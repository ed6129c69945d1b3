#include <doctest.h>

#include <algorithm>
#include <random>

#include "gendertime/errors.hpp"
#include "gendertime/shift_analysis.hpp"
#include "gendertime/ssa_ingest.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace gendertime;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const std::vector<std::string> kNamedShifts{"leslie", "addison", "jan",   "kendall",
                                            "madison", "morgan", "sidney"};

}  // namespace

TEST_CASE("gender_shift over the Leslie trajectory") {
  const auto r = gender_shift(load_fixture(), "Leslie", 1900, 2000);
  CHECK(r.name == "leslie");
  CHECK(r.p_start == doctest::Approx(0.08));
  CHECK(r.p_end == doctest::Approx(0.97));
  CHECK(r.delta == r.p_end - r.p_start);
  CHECK(r.delta >= 0.85);
  CHECK(r.weight == 1500.0);  // (1000 + 2000) / 2
}

TEST_CASE("gender_shift edge cases") {
  const auto t = build_table(std::vector<NameCountRecord>{{"pat", Sex::F, 10, 1950},
                                                          {"pat", Sex::M, 30, 1950},
                                                          {"pat", Sex::F, 10, 1990},
                                                          {"pat", Sex::M, 30, 1990}});
  CHECK(gender_shift(t, "pat", 1950, 1990).delta == 0.0);
  try {
    gender_shift(t, "pat", 1950, 2020);
    FAIL("expected EndpointMissingError");
  } catch (const EndpointMissingError& e) {
    CHECK(e.year() == 2020);
  }
  CHECK_THROWS_AS(gender_shift(t, "nobody", 1950, 1990), EndpointMissingError);

  const auto sidney = gender_shift(load_fixture(), "Sidney", 1900, 2000);
  CHECK(std::abs(sidney.delta) > InstabilityConfig{}.range_threshold);
}

TEST_CASE("find_unstable on the fixture") {
  const auto unstable = find_unstable(load_fixture());
  for (const auto& n : kNamedShifts) CHECK(contains(unstable, n));
  CHECK(contains(unstable, "johnnie"));
  CHECK_FALSE(contains(unstable, "george"));
  CHECK_FALSE(contains(unstable, "mary"));
  // Golden order from the brute-force oracle over data/ssa_fixture.
  const std::vector<std::string> expected{"addison", "madison", "leslie",  "morgan", "jan",
                                          "kendall", "sidney",  "johnnie", "willie"};
  CHECK(unstable == expected);
}

TEST_CASE("find_unstable with threshold 1.0 keeps only full flips") {
  std::vector<NameCountRecord> recs{
      {"flip", Sex::M, 600, 1900}, {"flip", Sex::F, 600, 2000},  // 0 -> 1
      {"half", Sex::M, 600, 1900}, {"half", Sex::F, 300, 2000}, {"half", Sex::M, 300, 2000},
      {"back", Sex::F, 700, 1900}, {"back", Sex::M, 700, 2000}};
  InstabilityConfig cfg;
  cfg.range_threshold = 1.0;
  CHECK(find_unstable(build_table(recs), cfg) == std::vector<std::string>{"back", "flip"});
}

TEST_CASE("find_unstable config validation") {
  InstabilityConfig cfg;
  cfg.sample_years = {1950, 1900};
  CHECK_THROWS_AS(find_unstable(load_fixture(), cfg), ValidationError);
  cfg.sample_years = {1900, 1950};
  cfg.range_threshold = 0.0;
  CHECK_THROWS_AS(find_unstable(load_fixture(), cfg), ValidationError);
}

TEST_CASE("top_shift_names") {
  SUBCASE("fixture 1925 to 1975, k = 24") {
    const auto top = top_shift_names(load_fixture(), 1925, 1975, 24, true);
    std::vector<std::string> names;
    for (const auto& r : top) names.push_back(r.name);
    CHECK(top.size() == 24);
    for (const auto& n : kNamedShifts) CHECK(contains(names, n));
  }
  SUBCASE("k = 1 picks the largest shift") {
    const auto t = build_table(std::vector<NameCountRecord>{{"up", Sex::F, 20, 1950},
                                                            {"up", Sex::M, 80, 1950},
                                                            {"up", Sex::F, 80, 1990},
                                                            {"up", Sex::M, 20, 1990},
                                                            {"down", Sex::F, 50, 1950},
                                                            {"down", Sex::M, 50, 1950},
                                                            {"down", Sex::F, 40, 1990},
                                                            {"down", Sex::M, 60, 1990}});
    const auto top = top_shift_names(t, 1950, 1990, 1, false);
    REQUIRE(top.size() == 1);
    CHECK(top[0].name == "up");
    CHECK(top[0].delta == doctest::Approx(0.6));
  }
  SUBCASE("fewer eligible names than k") {
    const auto all = top_shift_names(load_fixture(), 1925, 1975, 1000, false);
    CHECK(all.size() > 24);
    CHECK(all.size() <= load_fixture().name_count());
  }
  CHECK_THROWS_AS(top_shift_names(load_fixture(), 1925, 1975, 0, false), ValidationError);
}

TEST_CASE("net_female_shift") {
  ShiftRecord up{"a", 0.2, 0.8, 0.6, 10.0};
  ShiftRecord down{"b", 0.8, 0.2, -0.6, 10.0};
  CHECK(net_female_shift(std::vector{up, down}) == 0.0);
  CHECK(net_female_shift(std::vector{up}) == doctest::Approx(0.6));
  CHECK_THROWS_AS(net_female_shift(std::vector<ShiftRecord>{}), ValidationError);

  const auto& t = load_fixture();
  const auto unstable = find_unstable(t);
  const double net = net_female_shift(t, unstable, 1925, 1975);
  CHECK(net > 0.0);
  // Golden value from the brute-force oracle over data/ssa_fixture.
  CHECK(net == doctest::Approx(0.23460494872050186).epsilon(1e-12));
}

TEST_CASE("property: antisymmetry, scaling, boundedness") {
  const auto& t = load_fixture();
  std::vector<ShiftRecord> shifts;
  for (const auto& [name, years] : t.names()) {
    const auto fwd = gender_shift(t, name, 1910, 1990);
    const auto back = gender_shift(t, name, 1990, 1910);
    CHECK(back.delta == -fwd.delta);
    shifts.push_back(fwd);
  }
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ShiftRecord> subset;
    for (const auto& s : shifts) {
      if (gen() % 2) subset.push_back(s);
    }
    if (subset.empty()) continue;
    const double net = net_female_shift(subset);
    auto [lo, hi] = std::minmax_element(subset.begin(), subset.end(),
                                        [](const auto& a, const auto& b) { return a.delta < b.delta; });
    CHECK(net >= lo->delta - 1e-12);
    CHECK(net <= hi->delta + 1e-12);
    auto scaled = subset;
    const double factor = 0.25 + static_cast<double>(gen() % 1000);
    for (auto& s : scaled) s.weight *= factor;
    CHECK(net_female_shift(scaled) == doctest::Approx(net).epsilon(1e-12));
  }
}

TEST_CASE("property: stable anchors") {
  for (const char* name : {"George", "Mary"}) {
    CHECK(std::abs(gender_shift(load_fixture(), name, 1900, 2000).delta) < 0.05);
  }
}

TEST_CASE("property: agreement with brute-force oracles") {
  const std::vector<int> sample_years{1900, 1910, 1920, 1930, 1940};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    const auto recs = testing::random_records(seed);
    const auto table = build_table(recs);
    const testing::OracleTable oracle(recs);

    InstabilityConfig cfg{sample_years, 0.3, 500};
    CHECK(find_unstable(table, cfg) ==
          testing::oracle_find_unstable(oracle, sample_years, 0.3, 500));
    for (bool weighted : {false, true}) {
      CHECK(top_shift_names(table, 1905, 1935, 10, weighted) ==
            testing::oracle_top_shift(oracle, 1905, 1935, 10, weighted));
    }
  }
}
