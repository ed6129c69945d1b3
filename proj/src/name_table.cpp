#include "gendertime/name_table.hpp"

#include <set>
#include <string>

#include "gendertime/errors.hpp"

namespace gendertime {

std::optional<BirthCounts> NameYearTable::counts(const std::string& normalized_name,
                                                 int year) const {
  const YearMap* years = years_for(normalized_name);
  if (!years) return std::nullopt;
  auto it = years->find(year);
  if (it == years->end()) return std::nullopt;
  return it->second;
}

const NameYearTable::YearMap* NameYearTable::years_for(const std::string& normalized_name) const {
  auto it = names_.find(normalized_name);
  return it == names_.end() ? nullptr : &it->second;
}

std::vector<int> NameYearTable::years() const {
  std::set<int> all;
  for (const auto& [name, years] : names_) {
    for (const auto& [year, counts] : years) all.insert(year);
  }
  return {all.begin(), all.end()};
}

NameYearTable build_table(std::span<const NameCountRecord> records) {
  NameYearTable table;
  for (const auto& r : records) {
    if (r.name.empty()) throw BuildError("record with empty name in year " + std::to_string(r.year));
    if (r.count == 0) {
      throw BuildError("zero count for (" + r.name + ", " + std::to_string(r.year) + ")");
    }
    BirthCounts& cell = table.names_[r.name][r.year];
    std::uint64_t& slot = r.sex == Sex::F ? cell.female : cell.male;
    if (slot != 0) {
      throw BuildError("duplicate record (" + r.name + ", " + (r.sex == Sex::F ? "F" : "M") +
                       ", " + std::to_string(r.year) + ")");
    }
    slot = r.count;
  }
  for (const auto& [name, years] : table.names_) {
    table.entry_count_ += years.size();
    const int lo = years.begin()->first;
    const int hi = years.rbegin()->first;
    if (!table.range_) {
      table.range_ = YearRange{lo, hi};
    } else {
      table.range_->min_year = std::min(table.range_->min_year, lo);
      table.range_->max_year = std::max(table.range_->max_year, hi);
    }
  }
  return table;
}

}  // namespace gendertime
