#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gendertime::detail {

// Splits one physical line into fields. Fields may be double-quoted with ""
// as an escaped quote; quoted fields cannot span lines. Returns nullopt on an
// unterminated quote or stray characters after a closing quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

// Quotes the field when it contains a comma, quote or line break.
std::string csv_field(std::string_view field);

std::string_view trim(std::string_view s);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Strips a UTF-8 byte order mark and a trailing carriage return.
void clean_line(std::string& line, bool first_line);

}  // namespace gendertime::detail
