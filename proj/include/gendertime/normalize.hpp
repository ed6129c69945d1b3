#pragma once

#include <string>
#include <string_view>

namespace gendertime {

// Case-folds UTF-8 text, transliterates accented Latin letters to their
// ASCII base form and collapses runs of whitespace to a single space.
// Leading and trailing whitespace is removed.
std::string normalize_text(std::string_view text);

// Normalization applied to a single given name before table lookup.
// Identical to normalize_text; kept separate so call sites read by intent.
inline std::string normalize_name(std::string_view name) {
  return normalize_text(name);
}

}  // namespace gendertime
