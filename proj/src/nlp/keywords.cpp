#include "signbridge/nlp/keywords.hpp"

#include "signbridge/nlp/lemmatizer.hpp"
#include "signbridge/nlp/tagger.hpp"
#include "signbridge/nlp/text.hpp"

namespace signbridge::nlp {

TenseAnalysis detect_tense(std::span<const TaggedToken> tagged) {
  TenseAnalysis result;
  auto& c = result.counts;
  for (const auto& t : tagged) {
    switch (t.tag) {
      case PosTag::VBD:
      case PosTag::VBN:
        ++c.past;
        break;
      case PosTag::VBG:
      case PosTag::VBP:
      case PosTag::VBZ:
        ++c.present;
        break;
      case PosTag::MD:
        ++c.future;
        break;
      default:
        break;
    }
  }
  if (c.future == 0 && c.past == 0 && c.present == 0) return result;
  if (c.future >= c.past && c.future >= c.present) {
    result.tense = Tense::Future;
  } else if (c.past >= c.present) {
    result.tense = Tense::Past;
  } else {
    result.tense = Tense::Present;
  }
  return result;
}

std::vector<TaggedToken> filter_stopwords(std::span<const TaggedToken> tagged,
                                          const StopWordList& stops) {
  std::vector<TaggedToken> kept;
  kept.reserve(tagged.size());
  for (const auto& t : tagged) {
    if (!stops.contains(t.token.surface)) kept.push_back(t);
  }
  return kept;
}

std::vector<TaggedToken> analyze(std::string_view sentence, const NlpResources& resources,
                                 TenseAnalysis* tense) {
  const auto tokens = tokenize(normalize_text(sentence, resources.contractions));
  const auto tagged = tag_pos(tokens, resources.tags);
  if (tense != nullptr) *tense = detect_tense(tagged);

  const Lemmatizer lemmatizer(resources.tags, resources.lemma_exceptions);
  auto kept = filter_stopwords(tagged, resources.stop_words);
  for (auto& t : kept) t = lemmatizer.lemmatize(std::move(t));
  return kept;
}

KeywordResult extract_keywords(std::string_view sentence, const NlpResources& resources) {
  TenseAnalysis tense;
  const auto kept = analyze(sentence, resources, &tense);

  KeywordResult result{tense.tense, tense.counts, {}};
  for (const auto& t : kept) {
    if (t.tag == PosTag::MD && (t.lemma == "will" || t.lemma == "shall")) continue;
    result.keywords.push_back(t.lemma);
  }
  return result;
}

}  // namespace signbridge::nlp
