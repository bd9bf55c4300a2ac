#pragma once

#include <span>
#include <vector>

#include "signbridge/nlp/resources.hpp"
#include "signbridge/nlp/types.hpp"

namespace signbridge::nlp {

/// Assigns one tag per token: lexicon lookup on the lowercased surface first,
/// then shape rules for unknown words (digits -> CD, capitalised word after
/// the first position -> NNP, -ing -> VBG, -ed -> VBD, -ly -> RB, -s -> NNS),
/// otherwise NN. Lemmas are left empty.
std::vector<TaggedToken> tag_pos(std::span<const Token> tokens, const TagLexicon& lexicon);

/// Tag for a single out-of-lexicon word at the given sentence position.
PosTag guess_unknown_tag(std::string_view surface, std::size_t index);

}  // namespace signbridge::nlp
