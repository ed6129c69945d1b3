#pragma once

// Brute-force reference implementations of the shift analytics. They work on
// raw NameCountRecords with their own storage and a linear fallback scan, so
// they share no lookup code with the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gendertime/name_table.hpp"
#include "gendertime/shift_analysis.hpp"

namespace gendertime::testing {

class OracleTable {
 public:
  explicit OracleTable(const std::vector<NameCountRecord>& records) {
    for (const auto& r : records) {
      auto& cell = cells_[r.name][r.year];
      (r.sex == Sex::F ? cell.first : cell.second) += r.count;
      names_.push_back(r.name);
    }
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  }

  const std::vector<std::string>& names() const { return names_; }

  // (female, male) at the nearest year within max_distance, earlier first.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> lookup(const std::string& name, int year,
                                                                int max_distance = 10) const {
    auto it = cells_.find(name);
    if (it == cells_.end()) return std::nullopt;
    for (int d = 0; d <= max_distance; ++d) {
      for (int y : {year - d, year + d}) {
        auto c = it->second.find(y);
        if (c != it->second.end()) return c->second;
      }
    }
    return std::nullopt;
  }

  std::optional<double> p(const std::string& name, int year) const {
    auto c = lookup(name, year);
    if (!c || c->first + c->second == 0) return std::nullopt;
    return static_cast<double>(c->first) / static_cast<double>(c->first + c->second);
  }

  std::optional<ShiftRecord> shift(const std::string& name, int y1, int y2) const {
    auto a = lookup(name, y1);
    auto b = lookup(name, y2);
    auto pa = p(name, y1);
    auto pb = p(name, y2);
    if (!pa || !pb) return std::nullopt;
    ShiftRecord r;
    r.name = name;
    r.p_start = *pa;
    r.p_end = *pb;
    r.delta = *pb - *pa;
    r.weight = (static_cast<double>(a->first + a->second) +
                static_cast<double>(b->first + b->second)) /
               2.0;
    return r;
  }

 private:
  std::map<std::string, std::map<int, std::pair<std::uint64_t, std::uint64_t>>> cells_;
  std::vector<std::string> names_;
};

inline std::vector<std::string> oracle_find_unstable(const OracleTable& t,
                                                     const std::vector<int>& sample_years,
                                                     double threshold,
                                                     std::uint64_t min_births) {
  std::vector<std::pair<double, std::string>> hits;
  for (const auto& name : t.names()) {
    std::vector<double> ps;
    std::uint64_t births = 0;
    for (int y : sample_years) {
      if (auto c = t.lookup(name, y)) {
        ps.push_back(*t.p(name, y));
        births += c->first + c->second;
      }
    }
    if (ps.empty()) continue;
    double lo = ps[0];
    double hi = ps[0];
    for (double v : ps) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    if (hi - lo >= threshold && births >= min_births) hits.push_back({hi - lo, name});
  }
  // Selection sort: repeatedly take the best remaining entry.
  std::vector<std::string> out;
  while (!hits.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < hits.size(); ++i) {
      if (hits[i].first > hits[best].first ||
          (hits[i].first == hits[best].first && hits[i].second < hits[best].second)) {
        best = i;
      }
    }
    out.push_back(hits[best].second);
    hits.erase(hits.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

inline std::vector<ShiftRecord> oracle_top_shift(const OracleTable& t, int y1, int y2,
                                                 std::size_t k, bool weighted) {
  std::vector<ShiftRecord> pool;
  for (const auto& name : t.names()) {
    if (auto s = t.shift(name, y1, y2)) pool.push_back(*s);
  }
  auto key = [&](const ShiftRecord& s) {
    return weighted ? std::abs(s.delta) * s.weight : std::abs(s.delta);
  };
  std::vector<ShiftRecord> out;
  while (!pool.empty() && out.size() < k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      const double a = key(pool[i]);
      const double b = key(pool[best]);
      if (a > b || (a == b && pool[i].name < pool[best].name)) best = i;
    }
    out.push_back(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

inline std::optional<double> oracle_net_shift(const OracleTable& t,
                                              const std::vector<std::string>& names, int y1,
                                              int y2) {
  if (names.empty()) return std::nullopt;
  double num = 0.0;
  double den = 0.0;
  for (const auto& n : names) {
    auto s = t.shift(n, y1, y2);
    if (!s) return std::nullopt;
    num += s->delta * s->weight;
    den += s->weight;
  }
  return num / den;
}

}  // namespace gendertime::testing
