#include "signbridge/gloss/planner.hpp"

#include <cctype>

#include "signbridge/nlp/keywords.hpp"

namespace signbridge::gloss {

using nlohmann::json;

namespace {

// Lexicon gloss for an item: lowercase letter/marker, digit or word as-is.
std::string lexicon_gloss(const GlossItem& item) {
  std::string g;
  for (char c : item.value) {
    auto u = static_cast<unsigned char>(c);
    g += u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
  }
  return g;
}

}  // namespace

std::optional<std::string_view> tense_marker(nlp::Tense tense) {
  switch (tense) {
    case nlp::Tense::Past: return "Before";
    case nlp::Tense::Future: return "Will";
    case nlp::Tense::Present: return "Now";
    case nlp::Tense::None: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<GlossItem> plan_glosses(nlp::Tense tense, std::span<const std::string> keywords,
                                    const lexicon::LexiconView& lexicon,
                                    std::vector<std::string>* warnings) {
  std::vector<GlossItem> plan;
  if (auto marker = tense_marker(tense)) {
    plan.push_back({EntryKind::TenseMarker, std::string(*marker)});
  }
  for (const auto& word : keywords) {
    if (lexicon.find_word(word) != nullptr) {
      plan.push_back({EntryKind::Word, word});
      continue;
    }
    for (char c : word) {
      auto u = static_cast<unsigned char>(c);
      if (u < 0x80 && std::isalpha(u)) {
        plan.push_back({EntryKind::Letter, std::string(1, static_cast<char>(std::toupper(u)))});
      } else if (u < 0x80 && std::isdigit(u)) {
        plan.push_back({EntryKind::Digit, std::string(1, c)});
      } else if (warnings != nullptr) {
        warnings->push_back("skipped unspellable character in \"" + word + "\"");
      }
    }
  }
  return plan;
}

MissingAsset::MissingAsset(GlossItem item)
    : Error("no asset registered for " + std::string(lexicon::to_string(item.kind)) + " \"" +
            item.value + "\""),
      item_(std::move(item)) {}

PlaylistManifest emit_playlist(std::string_view sentence, nlp::Tense tense,
                               std::span<const std::string> keywords,
                               std::span<const GlossItem> plan,
                               const lexicon::LexiconView& lexicon,
                               std::string_view uri_prefix) {
  PlaylistManifest manifest;
  manifest.sentence = std::string(sentence);
  manifest.tense = tense;
  manifest.keywords.assign(keywords.begin(), keywords.end());
  manifest.entries.reserve(plan.size());
  for (const auto& item : plan) {
    const auto* entry = lexicon.find(lexicon_gloss(item), item.kind);
    if (entry == nullptr) throw MissingAsset(item);
    manifest.entries.push_back(
        {item, std::string(uri_prefix) + lexicon::asset_id(*entry), item.value});
  }
  return manifest;
}

PlaylistManifest translate(std::string_view sentence, const nlp::NlpResources& resources,
                           const lexicon::LexiconView& lexicon, std::string_view uri_prefix,
                           std::vector<std::string>* warnings) {
  auto result = nlp::extract_keywords(sentence, resources);
  auto plan = plan_glosses(result.tense, result.keywords, lexicon, warnings);
  return emit_playlist(sentence, result.tense, result.keywords, plan, lexicon, uri_prefix);
}

json to_json(const PlaylistManifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"kind", lexicon::to_string(e.item.kind)},
                       {"value", e.item.value},
                       {"asset_uri", e.asset_uri},
                       {"label", e.display_label}});
  }
  return {{"sentence", manifest.sentence},
          {"tense", nlp::to_string(manifest.tense)},
          {"keywords", manifest.keywords},
          {"entries", std::move(entries)}};
}

PlaylistManifest manifest_from_json(const json& doc) {
  PlaylistManifest m;
  m.sentence = doc.at("sentence").get<std::string>();
  auto tense = nlp::parse_tense(doc.at("tense").get<std::string>());
  if (!tense) throw Error("unknown tense " + doc.at("tense").dump());
  m.tense = *tense;
  m.keywords = doc.at("keywords").get<std::vector<std::string>>();
  for (const auto& e : doc.at("entries")) {
    auto kind = lexicon::parse_entry_kind(e.at("kind").get<std::string>());
    if (!kind) throw Error("unknown entry kind " + e.at("kind").dump());
    m.entries.push_back({{*kind, e.at("value").get<std::string>()},
                         e.at("asset_uri").get<std::string>(),
                         e.at("label").get<std::string>()});
  }
  return m;
}

}  // namespace signbridge::gloss
