#include "gendertime/dblp.hpp"

#include <array>
#include <charconv>
#include <exception>
#include <istream>
#include <string>
#include <string_view>

#include <expat.h>

#include "csv.hpp"
#include "gendertime/errors.hpp"

namespace gendertime {
namespace {

constexpr std::size_t kChunkSize = 64 * 1024;
constexpr std::string_view kWrapOpen = "<gendertime-fragment>";
constexpr std::string_view kWrapClose = "</gendertime-fragment>";

enum class Field { None, Author, Year, Venue };

// Length of the leading XML declaration / processing instructions / comments /
// DOCTYPE in `head`, so the synthetic wrapper element can be placed after it.
std::size_t prolog_length(std::string_view head) {
  std::size_t pos = 0;
  for (;;) {
    while (pos < head.size() && (head[pos] == ' ' || head[pos] == '\t' || head[pos] == '\r' ||
                                 head[pos] == '\n')) {
      ++pos;
    }
    const std::string_view rest = head.substr(pos);
    std::size_t end = std::string_view::npos;
    if (rest.starts_with("\xEF\xBB\xBF")) {
      pos += 3;
      continue;
    } else if (rest.starts_with("<?")) {
      end = rest.find("?>");
      if (end != std::string_view::npos) end += 2;
    } else if (rest.starts_with("<!--")) {
      end = rest.find("-->");
      if (end != std::string_view::npos) end += 3;
    } else if (rest.starts_with("<!DOCTYPE")) {
      const auto gt = rest.find('>');
      const auto bracket = rest.find('[');
      if (bracket != std::string_view::npos && bracket < gt) {
        end = rest.find("]>", bracket);
        if (end != std::string_view::npos) {
          end = rest.find('>', end) + 1;
        }
      } else if (gt != std::string_view::npos) {
        end = gt + 1;
      }
    } else {
      return pos;
    }
    if (end == std::string_view::npos) return pos;  // let expat report it
    pos += end;
  }
}

class DblpReader {
 public:
  explicit DblpReader(const std::function<void(CorpusRecord&&)>& sink)
      : sink_(sink), parser_(XML_ParserCreate(nullptr)) {
    if (!parser_) throw Error("cannot allocate XML parser");
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &DblpReader::on_start, &DblpReader::on_end);
    XML_SetCharacterDataHandler(parser_, &DblpReader::on_text);
    XML_SetEntityDeclHandler(parser_, &DblpReader::on_entity_decl);
    XML_SetSkippedEntityHandler(parser_, &DblpReader::on_skipped_entity);
  }
  ~DblpReader() { XML_ParserFree(parser_); }
  DblpReader(const DblpReader&) = delete;
  DblpReader& operator=(const DblpReader&) = delete;

  DblpStats run(std::istream& in) {
    std::array<char, kChunkSize> buf{};
    bool wrapped = false;
    for (;;) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      const auto got = static_cast<std::size_t>(in.gcount());
      std::string_view chunk(buf.data(), got);
      stats_.bytes_read += got;
      if (!wrapped) {
        const std::size_t prolog = prolog_length(chunk);
        feed(chunk.substr(0, prolog), false);
        inject_at_ = fed_;
        feed(kWrapOpen, false);
        chunk.remove_prefix(prolog);
        wrapped = true;
      }
      feed(chunk, false);
      if (got < buf.size()) break;
    }
    feed(kWrapClose, true);
    return stats_;
  }

 private:
  void feed(std::string_view data, bool final) {
    if (XML_Parse(parser_, data.data(), static_cast<int>(data.size()), final ? 1 : 0) ==
        XML_STATUS_ERROR) {
      if (pending_) std::rethrow_exception(pending_);
      const auto index = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser_));
      const std::size_t offset = source_offset(index);
      std::string msg = abort_reason_.empty() ? XML_ErrorString(XML_GetErrorCode(parser_))
                                              : abort_reason_;
      throw ParseError("malformed XML at byte " + std::to_string(offset) + ": " + msg, 0, offset);
    }
    fed_ += data.size();
  }

  std::size_t source_offset(std::size_t index) const {
    if (index <= inject_at_) return index;
    if (index < inject_at_ + kWrapOpen.size()) return inject_at_;
    return std::min(index - kWrapOpen.size(), stats_.bytes_read);
  }

  void abort(std::string reason) {
    if (abort_reason_.empty()) abort_reason_ = std::move(reason);
    XML_StopParser(parser_, XML_FALSE);
  }

  static void on_start(void* self_ptr, const XML_Char* name, const XML_Char** attrs) {
    auto& self = *static_cast<DblpReader*>(self_ptr);
    const std::string_view tag(name);
    ++self.depth_;
    if (!self.in_pub_) {
      if (tag == "article" || tag == "inproceedings") {
        self.in_pub_ = true;
        self.pub_depth_ = self.depth_;
        self.current_ = CorpusRecord{};
        self.year_text_.clear();
        self.have_year_ = false;
        self.element_bytes_ = 0;
        for (const XML_Char** a = attrs; a && *a; a += 2) {
          if (std::string_view(a[0]) == "key") self.current_.record_id = a[1];
        }
        self.count_bytes(self.current_.record_id.size());
      }
      return;
    }
    if (self.field_ == Field::None && self.depth_ == self.pub_depth_ + 1) {
      if (tag == "author") {
        self.field_ = Field::Author;
      } else if (tag == "year") {
        self.field_ = Field::Year;
      } else if ((tag == "journal" || tag == "booktitle") && self.current_.venue.empty()) {
        self.field_ = Field::Venue;
      }
      self.text_.clear();
    }
  }

  static void on_end(void* self_ptr, const XML_Char*) {
    auto& self = *static_cast<DblpReader*>(self_ptr);
    if (self.in_pub_ && self.field_ != Field::None && self.depth_ == self.pub_depth_ + 1) {
      const std::string_view text = detail::trim(self.text_);
      switch (self.field_) {
        case Field::Author:
          if (!text.empty()) self.current_.authors.push_back(make_mention(text));
          break;
        case Field::Year:
          self.year_text_ = std::string(text);
          self.have_year_ = true;
          break;
        case Field::Venue:
          self.current_.venue = std::string(text);
          break;
        case Field::None:
          break;
      }
      self.field_ = Field::None;
      self.text_.clear();
    } else if (self.in_pub_ && self.depth_ == self.pub_depth_) {
      self.finish_publication();
    }
    --self.depth_;
  }

  static void on_text(void* self_ptr, const XML_Char* s, int len) {
    auto& self = *static_cast<DblpReader*>(self_ptr);
    if (self.field_ == Field::None) return;
    self.text_.append(s, static_cast<std::size_t>(len));
    self.count_bytes(static_cast<std::size_t>(len));
  }

  static void on_entity_decl(void* self_ptr, const XML_Char* name, int, const XML_Char*, int,
                             const XML_Char*, const XML_Char*, const XML_Char*, const XML_Char*) {
    static_cast<DblpReader*>(self_ptr)->abort(std::string("entity declaration '") + name +
                                              "' not supported");
  }

  static void on_skipped_entity(void* self_ptr, const XML_Char* name, int) {
    static_cast<DblpReader*>(self_ptr)->abort(std::string("undefined entity '&") + name +
                                              ";' (only XML built-in entities are accepted)");
  }

  void count_bytes(std::size_t n) {
    element_bytes_ += n;
    stats_.max_element_bytes = std::max(stats_.max_element_bytes, element_bytes_);
  }

  void finish_publication() {
    in_pub_ = false;
    int year = 0;
    const bool year_ok = [&] {
      if (!have_year_ || year_text_.empty()) return false;
      auto [ptr, ec] = std::from_chars(year_text_.data(), year_text_.data() + year_text_.size(), year);
      return ec == std::errc() && ptr == year_text_.data() + year_text_.size() &&
             year >= kMinPublicationYear && year <= kMaxPublicationYear;
    }();
    if (!year_ok) {
      ++stats_.skipped_missing_year;
      return;
    }
    if (current_.authors.empty()) {
      ++stats_.skipped_no_authors;
      return;
    }
    current_.publication_year = year;
    ++stats_.records;
    try {
      sink_(std::move(current_));
    } catch (...) {
      pending_ = std::current_exception();
      abort("record consumer failed");
    }
    current_ = CorpusRecord{};
  }

  const std::function<void(CorpusRecord&&)>& sink_;
  XML_Parser parser_;
  DblpStats stats_;
  std::size_t fed_ = 0;
  std::size_t inject_at_ = 0;
  std::string abort_reason_;
  std::exception_ptr pending_;

  int depth_ = 0;
  bool in_pub_ = false;
  int pub_depth_ = 0;
  Field field_ = Field::None;
  std::string text_;
  std::string year_text_;
  bool have_year_ = false;
  std::size_t element_bytes_ = 0;
  CorpusRecord current_;
};

}  // namespace

DblpStats for_each_dblp_record(std::istream& in,
                               const std::function<void(CorpusRecord&&)>& sink) {
  DblpReader reader(sink);
  return reader.run(in);
}

DblpParseResult parse_dblp_subset(std::istream& in) {
  DblpParseResult result;
  result.stats = for_each_dblp_record(
      in, [&](CorpusRecord&& r) { result.records.push_back(std::move(r)); });
  return result;
}

}  // namespace gendertime
