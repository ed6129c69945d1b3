#include "gendertime/corpus.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

#include "csv.hpp"
#include "gendertime/errors.hpp"
#include "gendertime/normalize.hpp"

namespace gendertime {

using detail::trim;

std::string_view to_string(LedgerGender g) {
  switch (g) {
    case LedgerGender::F: return "F";
    case LedgerGender::M: return "M";
    case LedgerGender::U: return "U";
  }
  return "U";
}

std::optional<LedgerGender> ledger_gender_from(std::string_view s) {
  if (s == "F") return LedgerGender::F;
  if (s == "M") return LedgerGender::M;
  if (s == "U") return LedgerGender::U;
  return std::nullopt;
}

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string strip_dots(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != '.') out.push_back(c);
  }
  return out;
}

bool is_generational_suffix(std::string_view s) {
  static const std::set<std::string, std::less<>> suffixes = {"jr", "sr", "ii", "iii", "iv"};
  std::string key;
  for (char c : normalize_text(s)) {
    if (is_alnum(c)) key.push_back(c);
  }
  return suffixes.contains(key);
}

bool is_honorific(std::string_view token) {
  static const std::set<std::string, std::less<>> honorifics = {"mr", "mrs", "miss", "ms",
                                                                "prof", "dr"};
  return honorifics.contains(strip_dots(normalize_text(token)));
}

// Given-name-first form of a raw author string.
std::string given_first(std::string_view raw) {
  raw = trim(raw);
  const auto comma = raw.find(',');
  if (comma == std::string_view::npos) return std::string(raw);
  const std::string_view before = trim(raw.substr(0, comma));
  const std::string_view after = trim(raw.substr(comma + 1));
  if (after.empty()) return std::string(before);
  if (is_generational_suffix(after)) return std::string(raw);
  return std::string(after) + " " + std::string(before);
}

std::vector<std::string> tokens_of(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

FirstName extract_first_name(std::string_view raw) {
  std::vector<std::string> tokens = tokens_of(given_first(raw));
  std::size_t first = 0;
  while (first < tokens.size() && is_honorific(tokens[first])) ++first;
  if (first >= tokens.size()) return FirstName::initial_only_marker();

  std::string token = normalize_text(tokens[first]);
  std::size_t b = 0;
  while (b < token.size() && !is_alnum(token[b])) ++b;
  std::size_t e = token.size();
  while (e > b && !is_alnum(token[e - 1]) && token[e - 1] != '.') --e;
  token = token.substr(b, e - b);

  const std::string_view lead_piece = std::string_view(token).substr(0, token.find('.'));
  if (lead_piece.size() <= 1) return FirstName::initial_only_marker();

  while (!token.empty() && !is_alnum(token.back())) token.pop_back();
  return FirstName{token};
}

AuthorMention make_mention(std::string_view raw) {
  return AuthorMention{std::string(trim(raw)), extract_first_name(raw), std::nullopt};
}

std::string canonical_full_name(std::string_view raw) {
  return normalize_text(given_first(raw));
}

// --- corpus CSV ---

namespace {

constexpr std::string_view kCorpusHeader = "record_id,venue,year,authors";

bool parse_year(std::string_view s, int& year) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
  return ec == std::errc() && ptr == s.data() + s.size();
}

CorpusRecord parse_corpus_row(const std::string& line, std::size_t line_no) {
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  auto fields = detail::split_csv_line(line);
  if (!fields) throw fail("unbalanced quotes");
  if (fields->size() != 4) {
    throw fail("expected 4 columns, found " + std::to_string(fields->size()));
  }
  CorpusRecord rec;
  rec.record_id = std::string(trim((*fields)[0]));
  rec.venue = std::string(trim((*fields)[1]));
  if (rec.record_id.empty()) throw fail("empty record_id");
  if (!parse_year((*fields)[2], rec.publication_year)) {
    throw fail("bad year '" + (*fields)[2] + "'");
  }
  if (rec.publication_year < kMinPublicationYear || rec.publication_year > kMaxPublicationYear) {
    throw fail("year " + std::to_string(rec.publication_year) + " out of range " +
               std::to_string(kMinPublicationYear) + "-" + std::to_string(kMaxPublicationYear));
  }
  const std::string_view authors = trim((*fields)[3]);
  if (authors.empty()) throw fail("empty authors field");
  std::size_t start = 0;
  for (;;) {
    const auto bar = authors.find('|', start);
    const std::string_view one = trim(authors.substr(start, bar - start));
    if (one.empty()) throw fail("empty author in authors field");
    rec.authors.push_back(make_mention(one));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return rec;
}

}  // namespace

CorpusParseResult parse_corpus_csv(std::istream& in, bool strict) {
  CorpusParseResult result;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    detail::clean_line(line, line_no == 1);
    if (!have_header) {
      if (line != kCorpusHeader) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header '" +
                             std::string(kCorpusHeader) + "'",
                         line_no);
      }
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    try {
      result.records.push_back(parse_corpus_row(line, line_no));
    } catch (const ParseError& e) {
      if (strict) throw;
      result.skipped.push_back({e.line(), e.what()});
    }
  }
  return result;
}

void write_corpus_csv(const std::vector<CorpusRecord>& records, std::ostream& out) {
  out << kCorpusHeader << '\n';
  for (const auto& r : records) {
    std::string authors;
    for (std::size_t i = 0; i < r.authors.size(); ++i) {
      if (i) authors.push_back('|');
      authors += r.authors[i].raw;
    }
    out << detail::csv_field(r.record_id) << ',' << detail::csv_field(r.venue) << ','
        << r.publication_year << ',' << detail::csv_field(authors) << '\n';
  }
}

// --- override ledger ---

bool OverrideEntry::matches(const std::string& normalized_name,
                            const CorpusRecord& record) const {
  if (normalized_name != key) return false;
  if (year_from && record.publication_year < *year_from) return false;
  if (year_to && record.publication_year > *year_to) return false;
  if (venue && normalize_text(record.venue) != *venue) return false;
  return true;
}

namespace {

constexpr std::string_view kLedgerHeader = "key,gender,year_from,year_to,venue,source_note";

std::string describe(const OverrideEntry& e) {
  std::string s = "'" + e.key + "'";
  if (e.year_from || e.year_to) {
    s += " years " + (e.year_from ? std::to_string(*e.year_from) : std::string("*")) + "-" +
         (e.year_to ? std::to_string(*e.year_to) : std::string("*"));
  }
  if (e.venue) s += " venue '" + *e.venue + "'";
  return s;
}

}  // namespace

OverrideLedger parse_override_ledger(std::istream& in) {
  OverrideLedger ledger;
  std::set<std::tuple<std::string, std::optional<int>, std::optional<int>, std::optional<std::string>>>
      seen;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    detail::clean_line(line, line_no == 1);
    auto fail = [&](const std::string& msg) {
      return ParseError("ledger line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    if (!have_header) {
      if (line != kLedgerHeader) throw fail("expected header '" + std::string(kLedgerHeader) + "'");
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (!fields) throw fail("unbalanced quotes");
    if (fields->size() != 6) throw fail("expected 6 columns, found " + std::to_string(fields->size()));

    OverrideEntry e;
    e.key = canonical_full_name((*fields)[0]);
    if (e.key.empty()) throw fail("empty key");
    auto g = ledger_gender_from(trim((*fields)[1]));
    if (!g) throw fail("gender must be F, M or U");
    e.gender = *g;
    for (int i : {2, 3}) {
      const std::string_view f = trim((*fields)[i]);
      if (f.empty()) continue;
      int year = 0;
      if (!parse_year(f, year)) throw fail("bad year '" + std::string(f) + "'");
      (i == 2 ? e.year_from : e.year_to) = year;
    }
    if (e.year_from && e.year_to && *e.year_from > *e.year_to) {
      throw fail("year_from is after year_to");
    }
    if (auto v = trim((*fields)[4]); !v.empty()) e.venue = normalize_text(v);
    e.source_note = std::string(trim((*fields)[5]));
    if (e.source_note.empty()) throw fail("every override needs a source note");
    if (!seen.emplace(e.key, e.year_from, e.year_to, e.venue).second) {
      throw fail("duplicate ledger key " + describe(e));
    }
    ledger.entries.push_back(std::move(e));
  }
  return ledger;
}

OverrideResult apply_overrides(std::vector<CorpusRecord> records, const OverrideLedger& ledger) {
  OverrideResult result;
  std::vector<bool> used(ledger.entries.size(), false);
  if (!ledger.entries.empty()) {
    for (auto& rec : records) {
      for (auto& mention : rec.authors) {
        const std::string key = canonical_full_name(mention.raw);
        for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
          if (ledger.entries[i].matches(key, rec)) {
            mention.override_gender = ledger.entries[i].gender;
            used[i] = true;
            break;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
    if (!used[i]) {
      result.warnings.push_back("ledger entry " + describe(ledger.entries[i]) +
                                " matched no author mention");
    }
  }
  result.records = std::move(records);
  return result;
}

}  // namespace gendertime
