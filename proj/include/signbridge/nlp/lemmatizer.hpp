#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "signbridge/nlp/resources.hpp"
#include "signbridge/nlp/types.hpp"

namespace signbridge::nlp {

/// Word class whose morphology rules apply to a tag; nullopt for closed-class tags.
std::optional<LemmaClass> lemma_class_for(PosTag tag);

/// POS-aware lemmatizer.
///
/// For open-class tags the word is reduced by the exception table, or failing
/// that by suffix substitution; among candidates found in the tag lexicon
/// (the word itself included) the shortest wins. Reduction repeats until the
/// lemma is stable, so lemmatizing a lemma returns it unchanged. Closed-class
/// tags and unreducible words lemmatize to the lowercased surface.
class Lemmatizer {
 public:
  Lemmatizer(const TagLexicon& lexicon, const LemmaExceptions& exceptions)
      : lexicon_(&lexicon), exceptions_(&exceptions) {}

  std::string lemma_of(std::string_view surface, PosTag tag) const;

  TaggedToken lemmatize(TaggedToken token) const;

 private:
  std::string reduce_once(const std::string& word, LemmaClass cls) const;

  const TagLexicon* lexicon_;
  const LemmaExceptions* exceptions_;
};

}  // namespace signbridge::nlp
