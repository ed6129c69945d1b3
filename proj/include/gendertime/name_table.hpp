#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gendertime {

enum class Sex : std::uint8_t { F, M };

struct NameCountRecord {
  std::string name;  // normalized
  Sex sex = Sex::F;
  std::uint64_t count = 0;
  int year = 0;

  bool operator==(const NameCountRecord&) const = default;
};

struct BirthCounts {
  std::uint64_t female = 0;
  std::uint64_t male = 0;

  std::uint64_t total() const noexcept { return female + male; }
  bool operator==(const BirthCounts&) const = default;
};

struct YearRange {
  int min_year = 0;
  int max_year = 0;
  bool operator==(const YearRange&) const = default;
};

// Immutable (name, year) -> birth counts map. Built with build_table(); all
// accessors are const, so a table can be shared freely between threads.
class NameYearTable {
 public:
  using YearMap = std::map<int, BirthCounts>;

  NameYearTable() = default;

  bool empty() const noexcept { return names_.empty(); }
  std::size_t name_count() const noexcept { return names_.size(); }
  std::size_t entry_count() const noexcept { return entry_count_; }

  // Empty optional for an empty table.
  std::optional<YearRange> year_range() const noexcept { return range_; }

  std::optional<BirthCounts> counts(const std::string& normalized_name, int year) const;

  // All years with data for a name, or nullptr when the name is absent.
  const YearMap* years_for(const std::string& normalized_name) const;

  // Names in lexicographic order.
  const std::map<std::string, YearMap>& names() const noexcept { return names_; }

  // Distinct years present in any entry, ascending.
  std::vector<int> years() const;

  bool operator==(const NameYearTable& other) const {
    return names_ == other.names_;
  }

 private:
  friend NameYearTable build_table(std::span<const NameCountRecord> records);

  std::map<std::string, YearMap> names_;
  std::optional<YearRange> range_;
  std::size_t entry_count_ = 0;
};

// Merges records into a table. Throws BuildError on a repeated
// (name, sex, year) triple or on a record violating NameCountRecord's
// invariants.
NameYearTable build_table(std::span<const NameCountRecord> records);

}  // namespace gendertime
