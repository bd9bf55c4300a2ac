#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signbridge/nlp/resources.hpp"
#include "signbridge/nlp/types.hpp"

namespace signbridge::nlp {

struct TenseAnalysis {
  Tense tense = Tense::None;
  TenseCounts counts;

  bool operator==(const TenseAnalysis&) const = default;
};

/// Counts VBD+VBN as past, VBG+VBP+VBZ as present and MD as future, then
/// picks the largest group. Ties go future > past > present; no verbs at
/// all gives Tense::None.
TenseAnalysis detect_tense(std::span<const TaggedToken> tagged);

/// Removes tokens whose surface is a stop word. Survivors keep their order.
std::vector<TaggedToken> filter_stopwords(std::span<const TaggedToken> tagged,
                                          const StopWordList& stops);

struct KeywordResult {
  Tense tense = Tense::None;
  TenseCounts counts;
  std::vector<std::string> keywords;

  bool operator==(const KeywordResult&) const = default;
};

/// Full text front end: normalize, tokenize, tag, detect tense, drop stop
/// words, lemmatize. The future modals "will"/"shall" are dropped from the
/// keyword list after tense detection since the tense marker carries them.
KeywordResult extract_keywords(std::string_view sentence, const NlpResources& resources);

/// Same pipeline, returning every surviving token with its tag and lemma.
std::vector<TaggedToken> analyze(std::string_view sentence, const NlpResources& resources,
                                 TenseAnalysis* tense = nullptr);

}  // namespace signbridge::nlp
