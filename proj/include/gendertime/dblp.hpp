#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gendertime/corpus.hpp"

namespace gendertime {

struct DblpStats {
  std::size_t records = 0;
  std::size_t skipped_missing_year = 0;
  std::size_t skipped_no_authors = 0;
  std::size_t bytes_read = 0;
  // Largest amount of text buffered for one publication element.
  std::size_t max_element_bytes = 0;

  std::size_t skipped() const noexcept { return skipped_missing_year + skipped_no_authors; }
};

// Streams `article` and `inproceedings` elements out of a DBLP-style XML
// fragment (one or more top-level elements, or a single <dblp> root). Each
// record is handed to `sink` as soon as its closing tag is seen; only the
// current element is held in memory. Entities other than the five XML
// built-ins are rejected. Throws ParseError with the byte offset on malformed
// input.
DblpStats for_each_dblp_record(std::istream& in,
                               const std::function<void(CorpusRecord&&)>& sink);

struct DblpParseResult {
  std::vector<CorpusRecord> records;
  DblpStats stats;
};

DblpParseResult parse_dblp_subset(std::istream& in);

}  // namespace gendertime
