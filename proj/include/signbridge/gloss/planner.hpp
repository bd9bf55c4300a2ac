#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "signbridge/error.hpp"
#include "signbridge/lexicon/lexicon.hpp"
#include "signbridge/nlp/resources.hpp"
#include "signbridge/nlp/types.hpp"

namespace signbridge::gloss {

using lexicon::EntryKind;

/// One playable unit. Letter values are "A".."Z", digits "0".."9", markers
/// "Before"/"Will"/"Now", words the lowercase lemma.
struct GlossItem {
  EntryKind kind = EntryKind::Word;
  std::string value;

  bool operator==(const GlossItem&) const = default;
};

struct PlaylistEntry {
  GlossItem item;
  std::string asset_uri;
  std::string display_label;

  bool operator==(const PlaylistEntry&) const = default;
};

struct PlaylistManifest {
  std::string sentence;
  nlp::Tense tense = nlp::Tense::None;
  std::vector<std::string> keywords;
  std::vector<PlaylistEntry> entries;

  bool operator==(const PlaylistManifest&) const = default;
};

/// "Before", "Will" or "Now"; nothing for Tense::None.
std::optional<std::string_view> tense_marker(nlp::Tense tense);

/// Lowers keywords to gloss items: an optional leading tense marker, then one
/// Word per keyword found in the lexicon, or its letters and digits spelled
/// out when absent. Other characters are skipped and reported in warnings.
std::vector<GlossItem> plan_glosses(nlp::Tense tense, std::span<const std::string> keywords,
                                    const lexicon::LexiconView& lexicon,
                                    std::vector<std::string>* warnings = nullptr);

// A planned item has no registered asset.
class MissingAsset : public Error {
 public:
  explicit MissingAsset(GlossItem item);
  const GlossItem& item() const { return item_; }

 private:
  GlossItem item_;
};

/// Prefix joined with the entry's asset id to form asset_uri.
inline constexpr std::string_view kDefaultAssetUriPrefix = "/api/assets/";

PlaylistManifest emit_playlist(std::string_view sentence, nlp::Tense tense,
                               std::span<const std::string> keywords,
                               std::span<const GlossItem> plan,
                               const lexicon::LexiconView& lexicon,
                               std::string_view uri_prefix = kDefaultAssetUriPrefix);

/// extract_keywords + plan_glosses + emit_playlist.
PlaylistManifest translate(std::string_view sentence, const nlp::NlpResources& resources,
                           const lexicon::LexiconView& lexicon,
                           std::string_view uri_prefix = kDefaultAssetUriPrefix,
                           std::vector<std::string>* warnings = nullptr);

/// {sentence, tense, keywords:[...], entries:[{kind, value, asset_uri, label}]}
nlohmann::json to_json(const PlaylistManifest& manifest);
PlaylistManifest manifest_from_json(const nlohmann::json& doc);

}  // namespace signbridge::gloss
