#include "signbridge/nlp/tagger.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "signbridge/nlp/text.hpp"

namespace signbridge::nlp {

namespace {

constexpr std::array<std::pair<std::string_view, PosTag>, 4> kSuffixRules = {{
    {"ing", PosTag::VBG},
    {"ed", PosTag::VBD},
    {"ly", PosTag::RB},
    {"s", PosTag::NNS},
}};

}  // namespace

PosTag guess_unknown_tag(std::string_view surface, std::size_t index) {
  if (!surface.empty() && std::all_of(surface.begin(), surface.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
      })) {
    return PosTag::CD;
  }
  if (index > 0 && !surface.empty() && std::isupper(static_cast<unsigned char>(surface[0]))) {
    return PosTag::NNP;
  }
  const std::string lowered = to_lower(surface);
  for (auto [suffix, tag] : kSuffixRules) {
    if (lowered.size() > suffix.size() &&
        lowered.compare(lowered.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return tag;
    }
  }
  return PosTag::NN;
}

std::vector<TaggedToken> tag_pos(std::span<const Token> tokens, const TagLexicon& lexicon) {
  std::vector<TaggedToken> tagged;
  tagged.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto tag = lexicon.lookup(to_lower(token.surface));
    tagged.push_back(
        TaggedToken{token, tag.value_or(guess_unknown_tag(token.surface, token.index)), {}});
  }
  return tagged;
}

}  // namespace signbridge::nlp
