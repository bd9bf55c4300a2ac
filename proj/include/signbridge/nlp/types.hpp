#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace signbridge::nlp {

struct Token {
  std::string surface;
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

// Penn-style tag subset. Anything outside it is folded into OTHER.
enum class PosTag {
  NN, NNS, NNP,
  VB, VBD, VBG, VBN, VBP, VBZ,
  MD, JJ, RB, PRP, DT, IN, CC, CD, TO, UH, WP, WRB,
  OTHER,
};

inline constexpr std::size_t kPosTagCount = static_cast<std::size_t>(PosTag::OTHER) + 1;

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

bool is_verb(PosTag tag);
bool is_noun(PosTag tag);

struct TaggedToken {
  Token token;
  PosTag tag = PosTag::OTHER;
  std::string lemma;

  bool operator==(const TaggedToken&) const = default;
};

enum class Tense { Past, Present, Future, None };

std::string_view to_string(Tense tense);
std::optional<Tense> parse_tense(std::string_view name);

struct TenseCounts {
  std::size_t past = 0;
  std::size_t present = 0;
  std::size_t future = 0;

  bool operator==(const TenseCounts&) const = default;
};

}  // namespace signbridge::nlp
