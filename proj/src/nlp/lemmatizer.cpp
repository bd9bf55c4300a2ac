#include "signbridge/nlp/lemmatizer.hpp"

#include <span>
#include <utility>

#include "signbridge/nlp/text.hpp"

namespace signbridge::nlp {

namespace {

using Rule = std::pair<std::string_view, std::string_view>;

constexpr Rule kNounRules[] = {
    {"s", ""},     {"ies", "y"},   {"es", ""},     {"es", "e"},
    {"ses", "s"},  {"ves", "f"},   {"xes", "x"},   {"zes", "z"},
    {"ches", "ch"}, {"shes", "sh"}, {"men", "man"},
};

constexpr Rule kVerbRules[] = {
    {"s", ""},   {"ies", "y"}, {"es", "e"},  {"es", ""},
    {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""},
};

constexpr Rule kAdjectiveRules[] = {
    {"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"},
};

std::span<const Rule> rules_for(LemmaClass cls) {
  switch (cls) {
    case LemmaClass::Noun: return kNounRules;
    case LemmaClass::Verb: return kVerbRules;
    case LemmaClass::Adjective: return kAdjectiveRules;
    case LemmaClass::Adverb: return {};
  }
  return {};
}

// Bounds the fixpoint loop; real chains settle in two steps.
constexpr int kMaxReductions = 8;

}  // namespace

std::optional<LemmaClass> lemma_class_for(PosTag tag) {
  if (is_verb(tag)) return LemmaClass::Verb;
  if (is_noun(tag)) return LemmaClass::Noun;
  if (tag == PosTag::JJ) return LemmaClass::Adjective;
  if (tag == PosTag::RB) return LemmaClass::Adverb;
  return std::nullopt;
}

std::string Lemmatizer::reduce_once(const std::string& word, LemmaClass cls) const {
  if (auto lemma = exceptions_->lookup(word, cls)) return std::string(*lemma);

  std::optional<std::string> best;
  auto consider = [&](std::string candidate) {
    if (candidate.empty() || !lexicon_->contains(candidate)) return;
    if (!best || candidate.size() < best->size()) best = std::move(candidate);
  };
  consider(word);
  for (auto [suffix, replacement] : rules_for(cls)) {
    if (word.size() <= suffix.size()) continue;
    if (word.compare(word.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    consider(word.substr(0, word.size() - suffix.size()) + std::string(replacement));
  }
  return best.value_or(word);
}

std::string Lemmatizer::lemma_of(std::string_view surface, PosTag tag) const {
  std::string word = to_lower(surface);
  auto cls = lemma_class_for(tag);
  if (!cls) return word;
  for (int i = 0; i < kMaxReductions; ++i) {
    std::string next = reduce_once(word, *cls);
    if (next == word) break;
    word = std::move(next);
  }
  return word;
}

TaggedToken Lemmatizer::lemmatize(TaggedToken token) const {
  token.lemma = lemma_of(token.token.surface, token.tag);
  return token;
}

}  // namespace signbridge::nlp
