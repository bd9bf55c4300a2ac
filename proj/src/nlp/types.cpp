#include "signbridge/nlp/types.hpp"

#include <array>

namespace signbridge::nlp {

namespace {

constexpr std::array<std::string_view, kPosTagCount> kTagNames = {
    "NN", "NNS", "NNP", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD", "JJ",
    "RB", "PRP", "DT", "IN", "CC", "CD", "TO", "UH", "WP", "WRB", "OTHER"};

}  // namespace

std::string_view to_string(PosTag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

bool is_verb(PosTag tag) {
  switch (tag) {
    case PosTag::VB:
    case PosTag::VBD:
    case PosTag::VBG:
    case PosTag::VBN:
    case PosTag::VBP:
    case PosTag::VBZ:
      return true;
    default:
      return false;
  }
}

bool is_noun(PosTag tag) {
  return tag == PosTag::NN || tag == PosTag::NNS || tag == PosTag::NNP;
}

std::string_view to_string(Tense tense) {
  switch (tense) {
    case Tense::Past: return "Past";
    case Tense::Present: return "Present";
    case Tense::Future: return "Future";
    case Tense::None: return "None";
  }
  return "None";
}

std::optional<Tense> parse_tense(std::string_view name) {
  for (Tense t : {Tense::Past, Tense::Present, Tense::Future, Tense::None}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

}  // namespace signbridge::nlp
