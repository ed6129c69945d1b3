#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gendertime {

// Normalized given name, or the initial-only marker (empty value).
struct FirstName {
  std::string value;

  static FirstName initial_only_marker() { return {}; }
  bool initial_only() const noexcept { return value.empty(); }
  bool operator==(const FirstName&) const = default;
};

// Gender recorded by a qualitative lookup. U means "looked up, undetermined".
enum class LedgerGender : std::uint8_t { F, M, U };

std::string_view to_string(LedgerGender g);
std::optional<LedgerGender> ledger_gender_from(std::string_view s);

struct AuthorMention {
  std::string raw;
  FirstName first_name;
  std::optional<LedgerGender> override_gender;

  bool operator==(const AuthorMention&) const = default;
};

struct CorpusRecord {
  std::string record_id;
  std::string venue;
  int publication_year = 0;
  std::vector<AuthorMention> authors;

  bool operator==(const CorpusRecord&) const = default;
};

inline constexpr int kMinPublicationYear = 1900;
inline constexpr int kMaxPublicationYear = 2100;

// Given-name-first author string -> normalized first token. Honorifics
// (Mr., Mrs., Miss, Ms., Prof., Dr.) are dropped; nothing left means
// initial-only. "Surname, Given" is flipped unless the part after the comma
// is a generational suffix. A leading token whose first '.'-separated piece is a
// single letter ("R.", "R.C.", "J.-P.") yields the initial-only marker.
FirstName extract_first_name(std::string_view raw);

AuthorMention make_mention(std::string_view raw);

// Full-name key used for deduplication and override matching: the
// "Surname, Given" form is flipped to given-first, then normalize_text().
std::string canonical_full_name(std::string_view raw);

// --- corpus CSV: record_id,venue,year,authors (authors '|'-separated) ---

struct RowIssue {
  std::size_t line = 0;
  std::string message;
};

struct CorpusParseResult {
  std::vector<CorpusRecord> records;
  std::vector<RowIssue> skipped;  // lenient mode only
};

// Strict mode throws ParseError at the first bad row; lenient mode skips it
// and tallies it in `skipped`.
CorpusParseResult parse_corpus_csv(std::istream& in, bool strict = true);

void write_corpus_csv(const std::vector<CorpusRecord>& records, std::ostream& out);

// --- override ledger CSV: key,gender,year_from,year_to,venue,source_note ---

struct OverrideEntry {
  std::string key;  // normalized full name
  LedgerGender gender = LedgerGender::U;
  std::optional<int> year_from;
  std::optional<int> year_to;
  std::optional<std::string> venue;
  std::string source_note;

  bool matches(const std::string& normalized_name, const CorpusRecord& record) const;
};

// Entries keep file order; the first matching entry wins.
struct OverrideLedger {
  std::vector<OverrideEntry> entries;
};

// Throws ParseError for malformed rows, a missing source note, or a repeated
// (key, scope) combination.
OverrideLedger parse_override_ledger(std::istream& in);

struct OverrideResult {
  std::vector<CorpusRecord> records;
  std::vector<std::string> warnings;  // one per ledger entry that matched nothing
};

OverrideResult apply_overrides(std::vector<CorpusRecord> records, const OverrideLedger& ledger);

}  // namespace gendertime
