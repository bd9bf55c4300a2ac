#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "signbridge/nlp/types.hpp"

namespace signbridge::nlp {

class ContractionTable;

/// ASCII lowercase; bytes outside ASCII pass through untouched.
std::string to_lower(std::string_view text);

/// Cleans raw user text before tokenization.
///
/// Typographic apostrophes become ASCII ones, table contractions are
/// expanded ("don't" -> "do not"), a trailing possessive "'s" is dropped,
/// every other ASCII punctuation character is removed except a hyphen
/// between two alphanumerics, and runs of whitespace collapse to one space.
/// The result has no leading or trailing space.
std::string normalize_text(std::string_view raw, const ContractionTable& contractions);

/// Whitespace split of normalized text into indexed tokens.
std::vector<Token> tokenize(std::string_view sentence);

}  // namespace signbridge::nlp
