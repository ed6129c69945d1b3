#include "gendertime/ssa_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "fixture_data.hpp"
#include "gendertime/errors.hpp"
#include "gendertime/normalize.hpp"

namespace gendertime {
namespace {

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

NameCountRecord parse_line(std::string_view line, int year, std::size_t line_no) {
  const auto c1 = line.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
  if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
    throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields Name,Sex,Count",
                     line_no);
  }
  const std::string_view raw_name = line.substr(0, c1);
  const std::string_view sex = line.substr(c1 + 1, c2 - c1 - 1);
  const std::string_view count = line.substr(c2 + 1);

  NameCountRecord rec;
  rec.year = year;
  rec.name = normalize_name(raw_name);
  if (rec.name.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": empty name", line_no);
  }
  if (sex == "F") {
    rec.sex = Sex::F;
  } else if (sex == "M") {
    rec.sex = Sex::M;
  } else {
    throw ParseError("line " + std::to_string(line_no) + ": invalid sex code '" +
                         std::string(sex) + "'",
                     line_no);
  }
  if (!parse_int(count, rec.count)) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid count '" +
                         std::string(count) + "'",
                     line_no);
  }
  if (rec.count == 0) {
    throw ParseError("line " + std::to_string(line_no) + ": count must be at least 1", line_no);
  }
  return rec;
}

struct YearFile {
  int year;
  std::filesystem::path path;
};

}  // namespace

std::vector<NameCountRecord> parse_year_file(std::istream& in, int year) {
  std::vector<NameCountRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_line(line, year, line_no));
  }
  return out;
}

std::optional<int> year_from_filename(std::string_view filename) {
  constexpr std::string_view prefix = "yob";
  constexpr std::string_view suffix = ".txt";
  if (filename.size() != prefix.size() + 4 + suffix.size()) return std::nullopt;
  if (!filename.starts_with(prefix) || !filename.ends_with(suffix)) return std::nullopt;
  int year = 0;
  const std::string_view digits = filename.substr(prefix.size(), 4);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::from_chars(digits.data(), digits.data() + digits.size(), year);
  return year;
}

NameYearTable load_ssa_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error("cannot read SSA directory '" + dir.string() + "'");
  }
  std::vector<YearFile> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (auto year = year_from_filename(entry.path().filename().string())) {
      files.push_back({*year, entry.path()});
    }
  }
  if (ec) throw Error("cannot read SSA directory '" + dir.string() + "': " + ec.message());
  if (files.empty()) throw Error("no year files found in '" + dir.string() + "'");
  std::sort(files.begin(), files.end(),
            [](const YearFile& a, const YearFile& b) { return a.year < b.year; });

  std::vector<std::future<std::vector<NameCountRecord>>> parsed;
  parsed.reserve(files.size());
  for (const auto& f : files) {
    parsed.push_back(std::async(std::launch::async, [f] {
      std::ifstream in(f.path);
      if (!in) throw Error("cannot open '" + f.path.string() + "'");
      try {
        return parse_year_file(in, f.year);
      } catch (const ParseError& e) {
        throw ParseError(f.path.filename().string() + ": " + e.what(), e.line());
      }
    }));
  }
  std::vector<NameCountRecord> all;
  for (auto& p : parsed) {
    auto recs = p.get();
    all.insert(all.end(), std::make_move_iterator(recs.begin()),
               std::make_move_iterator(recs.end()));
  }
  return build_table(all);
}

void write_year_file(const NameYearTable& table, int year, std::ostream& out) {
  struct Row {
    const std::string* name;
    Sex sex;
    std::uint64_t count;
  };
  std::vector<Row> rows;
  for (const auto& [name, years] : table.names()) {
    auto it = years.find(year);
    if (it == years.end()) continue;
    if (it->second.female > 0) rows.push_back({&name, Sex::F, it->second.female});
    if (it->second.male > 0) rows.push_back({&name, Sex::M, it->second.male});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tuple(a.sex, b.count, *a.name) < std::tuple(b.sex, a.count, *b.name);
  });
  for (const auto& r : rows) {
    out << *r.name << ',' << (r.sex == Sex::F ? 'F' : 'M') << ',' << r.count << '\n';
  }
}

const NameYearTable& load_fixture() {
  static const NameYearTable table = [] {
    std::vector<NameCountRecord> all;
    for (const auto& file : detail::fixture_files()) {
      std::istringstream in{std::string(file.content)};
      auto recs = parse_year_file(in, file.year);
      all.insert(all.end(), recs.begin(), recs.end());
    }
    return build_table(all);
  }();
  return table;
}

void write_snapshot(const NameYearTable& table, std::ostream& out) {
  out << kSnapshotMagic << " v" << kSnapshotVersion << '\n';
  out << "name,year,female,male\n";
  for (const auto& [name, years] : table.names()) {
    for (const auto& [year, c] : years) {
      out << name << ',' << year << ',' << c.female << ',' << c.male << '\n';
    }
  }
}

NameYearTable read_snapshot(std::istream& in) {
  std::string line;
  const std::string expected =
      std::string(kSnapshotMagic) + " v" + std::to_string(kSnapshotVersion);
  if (!std::getline(in, line) || line != expected) {
    throw ParseError("not a table snapshot or stale snapshot version (expected '" + expected +
                         "')",
                     1);
  }
  if (!std::getline(in, line) || line != "name,year,female,male") {
    throw ParseError("snapshot column header missing", 2);
  }
  std::vector<NameCountRecord> records;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string_view rest = line;
    std::string_view fields[4];
    for (int i = 0; i < 4; ++i) {
      const auto pos = rest.find(',');
      if ((pos == std::string_view::npos) != (i == 3)) {
        throw ParseError("snapshot line " + std::to_string(line_no) + ": expected 4 fields",
                         line_no);
      }
      fields[i] = rest.substr(0, pos);
      if (pos != std::string_view::npos) rest.remove_prefix(pos + 1);
    }
    int year = 0;
    std::uint64_t female = 0;
    std::uint64_t male = 0;
    if (!parse_int(fields[1], year) || !parse_int(fields[2], female) ||
        !parse_int(fields[3], male) || fields[0].empty() || female + male == 0) {
      throw ParseError("snapshot line " + std::to_string(line_no) + ": malformed entry", line_no);
    }
    const std::string name(fields[0]);
    if (female > 0) records.push_back({name, Sex::F, female, year});
    if (male > 0) records.push_back({name, Sex::M, male, year});
  }
  return build_table(records);
}

}  // namespace gendertime
