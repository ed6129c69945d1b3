#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "gendertime/name_table.hpp"

namespace gendertime {

// Parses one SSA year-of-birth file: `Name,Sex,Count` per line, no header.
// Blank lines are skipped. Throws ParseError carrying the 1-based line number.
std::vector<NameCountRecord> parse_year_file(std::istream& in, int year);

// Extracts YYYY from a `yobYYYY.txt` file name.
std::optional<int> year_from_filename(std::string_view filename);

// Reads every `yobYYYY.txt` in a directory (files are parsed concurrently,
// merged deterministically). Throws Error when the directory is unreadable or
// holds no year files; ParseError messages are prefixed with the file name.
NameYearTable load_ssa_directory(const std::filesystem::path& dir);

// Writes the entries of one year in SSA line format: females by descending
// count, then males, ties by name. Zero counts are omitted.
void write_year_file(const NameYearTable& table, int year, std::ostream& out);

// The miniature table shipped with the library (data/ssa_fixture).
const NameYearTable& load_fixture();

// Snapshot: a versioned CSV dump of the whole table, used by the CLI so the
// SSA directory is parsed once.
inline constexpr std::string_view kSnapshotMagic = "#gendertime-table-snapshot";
inline constexpr int kSnapshotVersion = 1;

void write_snapshot(const NameYearTable& table, std::ostream& out);

// Throws ParseError on an unknown or stale snapshot version.
NameYearTable read_snapshot(std::istream& in);

}  // namespace gendertime
