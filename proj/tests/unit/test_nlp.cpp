#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "signbridge/nlp/keywords.hpp"
#include "signbridge/nlp/lemmatizer.hpp"
#include "signbridge/nlp/tagger.hpp"
#include "signbridge/nlp/text.hpp"
#include "test_support.hpp"

using namespace signbridge::nlp;
using signbridge::testing::nlp_resources;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<TaggedToken> with_tags(std::initializer_list<PosTag> tags) {
  std::vector<TaggedToken> out;
  for (auto tag : tags) out.push_back(TaggedToken{Token{"w", out.size()}, tag, {}});
  return out;
}

std::vector<TaggedToken> tag_sentence(std::string_view text) {
  const auto& res = nlp_resources();
  return tag_pos(tokenize(normalize_text(text, res.contractions)), res.tags);
}

std::vector<PosTag> tags_of(const std::vector<TaggedToken>& tagged) {
  std::vector<PosTag> out;
  for (const auto& t : tagged) out.push_back(t.tag);
  return out;
}

}  // namespace

TEST_CASE("bundled data files load") {
  const auto& res = nlp_resources();
  CHECK(res.tags.size() > 30000);
  CHECK(res.lemma_exceptions.size() > 1000);
  CHECK(res.contractions.size() > 40);
  CHECK(res.stop_words.contains("am"));
  CHECK(res.stop_words.contains("AM"));
  CHECK_FALSE(res.stop_words.contains("will"));
  CHECK_FALSE(res.stop_words.contains("shall"));
  CHECK_FALSE(res.stop_words.contains("i"));
}

TEST_CASE("stop list refuses tense-bearing modals") {
  StopWordList stops{"will", "Shall", "the"};
  CHECK(stops.size() == 1);
  CHECK(stops.contains("The"));
  CHECK_FALSE(stops.contains("will"));
}

TEST_CASE("missing data file is reported") {
  CHECK_THROWS_AS(TagLexicon::load("/nonexistent/tags.tsv"), DataFileError);
}

TEST_CASE("normalize_text") {
  const auto& c = nlp_resources().contractions;
  CHECK(normalize_text("Don't do that", c) == "do not do that");
  CHECK(normalize_text("", c) == "");
  CHECK(normalize_text("I am happy.", c) == "I am happy");

  SUBCASE("typographic apostrophes") {
    CHECK(normalize_text("I\xE2\x80\x99m here", c) == "I am here");
    CHECK(normalize_text("won\xE2\x80\x99t", c) == "will not");
    CHECK(normalize_text("it's fine", c) == "it is fine");
    CHECK(normalize_text("Can't stop", c) == "can not stop");
  }
  SUBCASE("punctuation and hyphens") {
    CHECK(normalize_text("  Why are   you crying?? ", c) == "Why are you crying");
    CHECK(normalize_text("a well-known - fact", c) == "a well-known fact");
    CHECK(normalize_text("--dash-- -x- y-", c) == "dash x y");
    CHECK(normalize_text("John's dog", c) == "John dog");
    CHECK(normalize_text("\"quoted\", (maybe)", c) == "quoted maybe");
  }
}

TEST_CASE("tokenize") {
  CHECK(surfaces(tokenize("I am happy")) == std::vector<std::string>{"I", "am", "happy"});
  CHECK(tokenize("").empty());
  CHECK(surfaces(tokenize("go there now")) == std::vector<std::string>{"go", "there", "now"});
  auto tokens = tokenize(" a  b\tc ");
  REQUIRE(tokens.size() == 3);
  for (std::size_t i = 0; i < tokens.size(); ++i) CHECK(tokens[i].index == i);
}

TEST_CASE("normalize then tokenize is idempotent") {
  const auto& c = nlp_resources().contractions;
  std::mt19937 rng(1234);
  const std::string alphabet = "abcXYZ09 '-.,!?\t\"`";
  const std::vector<std::string> words = {"don't", "I'm", "won't", "it's", "well-known",
                                          "John's", "\xE2\x80\x99", "can't", "--"};
  for (int round = 0; round < 2000; ++round) {
    std::string raw;
    int pieces = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < pieces; ++i) {
      if (rng() % 3 == 0) {
        raw += words[rng() % words.size()];
      } else {
        raw += alphabet[rng() % alphabet.size()];
      }
    }
    const auto once = normalize_text(raw, c);
    const auto tokens = tokenize(once);
    std::string joined;
    for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t.surface;
    CHECK(joined == once);
    CHECK(normalize_text(joined, c) == once);
    CHECK(tokenize(normalize_text(joined, c)) == tokens);
    for (const auto& t : tokens) {
      CHECK_FALSE(t.surface.empty());
      CHECK(t.surface.find(' ') == std::string::npos);
    }
  }
}

TEST_CASE("tag_pos") {
  const auto& lex = nlp_resources().tags;
  CHECK(tags_of(tag_pos(tokenize("I am happy"), lex)) ==
        std::vector<PosTag>{PosTag::PRP, PosTag::VBP, PosTag::JJ});
  CHECK(tags_of(tag_pos(tokenize("7"), lex)) == std::vector<PosTag>{PosTag::CD});
  CHECK(tags_of(tag_pos(tokenize("blorging"), lex)) == std::vector<PosTag>{PosTag::VBG});

  SUBCASE("shape rules for unknown words") {
    CHECK(guess_unknown_tag("2024", 0) == PosTag::CD);
    CHECK(guess_unknown_tag("Zorblat", 2) == PosTag::NNP);
    CHECK(guess_unknown_tag("Zorblat", 0) == PosTag::NN);
    CHECK(guess_unknown_tag("flarped", 1) == PosTag::VBD);
    CHECK(guess_unknown_tag("glorply", 1) == PosTag::RB);
    CHECK(guess_unknown_tag("wugs", 1) == PosTag::NNS);
    CHECK(guess_unknown_tag("wug", 1) == PosTag::NN);
  }
  SUBCASE("lookup is case-insensitive") {
    CHECK(tags_of(tag_sentence("HELLO there")).front() == PosTag::UH);
  }
}

TEST_CASE("tag_pos is total") {
  const auto& lex = nlp_resources().tags;
  std::mt19937 rng(99);
  std::vector<std::string> vocabulary;
  for (const auto& [word, tag] : lex.entries()) {
    if (vocabulary.size() >= 500) break;
    vocabulary.push_back(word);
  }
  vocabulary.insert(vocabulary.end(), {"Qwerty", "zzz", "123", "x-y", "\xC3\xA9t\xC3\xA9"});
  for (int round = 0; round < 300; ++round) {
    std::vector<Token> tokens;
    int n = std::uniform_int_distribution<int>(0, 15)(rng);
    for (int i = 0; i < n; ++i) {
      tokens.push_back(Token{vocabulary[rng() % vocabulary.size()], tokens.size()});
    }
    auto tagged = tag_pos(tokens, lex);
    REQUIRE(tagged.size() == tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      CHECK(tagged[i].token == tokens[i]);
      CHECK(static_cast<std::size_t>(tagged[i].tag) < kPosTagCount);
    }
  }
}

TEST_CASE("detect_tense") {
  auto future = detect_tense(with_tags({PosTag::PRP, PosTag::MD, PosTag::VB}));
  CHECK(future.tense == Tense::Future);
  CHECK(future.counts == TenseCounts{0, 0, 1});

  auto past = detect_tense(with_tags({PosTag::PRP, PosTag::VBD}));
  CHECK(past.tense == Tense::Past);
  CHECK(past.counts == TenseCounts{1, 0, 0});

  auto none = detect_tense(with_tags({PosTag::DT, PosTag::NN}));
  CHECK(none.tense == Tense::None);
  CHECK(none.counts == TenseCounts{});

  CHECK(detect_tense({}).tense == Tense::None);
  CHECK(detect_tense(with_tags({PosTag::VB})).tense == Tense::None);

  SUBCASE("tie-break future > past > present") {
    CHECK(detect_tense(with_tags({PosTag::MD, PosTag::VBD})).tense == Tense::Future);
    CHECK(detect_tense(with_tags({PosTag::MD, PosTag::VBZ})).tense == Tense::Future);
    CHECK(detect_tense(with_tags({PosTag::VBN, PosTag::VBG})).tense == Tense::Past);
    CHECK(detect_tense(with_tags({PosTag::MD, PosTag::VBD, PosTag::VBP})).tense ==
          Tense::Future);
    CHECK(detect_tense(with_tags({PosTag::VBD, PosTag::VBP, PosTag::VBZ})).tense ==
          Tense::Present);
  }
}

TEST_CASE("detect_tense is permutation invariant") {
  std::mt19937 rng(7);
  for (int round = 0; round < 500; ++round) {
    std::vector<TaggedToken> tagged;
    int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) {
      tagged.push_back(TaggedToken{Token{"w", tagged.size()},
                                   static_cast<PosTag>(rng() % kPosTagCount), {}});
    }
    auto expected = detect_tense(tagged);
    auto& c = expected.counts;
    CHECK(c.past + c.present + c.future <= tagged.size());
    std::shuffle(tagged.begin(), tagged.end(), rng);
    CHECK(detect_tense(tagged) == expected);
  }
}

TEST_CASE("filter_stopwords") {
  const auto& stops = nlp_resources().stop_words;
  auto kept = filter_stopwords(tag_sentence("I am happy"), stops);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].token.surface == "I");
  CHECK(kept[1].token.surface == "happy");
  CHECK(filter_stopwords({}, stops).empty());
  auto modal = filter_stopwords(tag_sentence("will go"), stops);
  REQUIRE(modal.size() == 2);
  CHECK(modal[0].token.surface == "will");
}

TEST_CASE("filter_stopwords keeps a subsequence") {
  StopWordList stops{"a", "b"};
  std::mt19937 rng(5);
  const char* pool[] = {"a", "b", "c", "d", "A", "e"};
  for (int round = 0; round < 300; ++round) {
    std::vector<TaggedToken> tagged;
    int n = std::uniform_int_distribution<int>(0, 10)(rng);
    for (int i = 0; i < n; ++i) {
      tagged.push_back(TaggedToken{Token{pool[rng() % 6], tagged.size()}, PosTag::NN, {}});
    }
    auto kept = filter_stopwords(tagged, stops);
    std::size_t cursor = 0;
    for (const auto& k : kept) {
      CHECK_FALSE(stops.contains(k.token.surface));
      while (cursor < tagged.size() && !(tagged[cursor] == k)) ++cursor;
      CHECK(cursor < tagged.size());
      ++cursor;
    }
  }
}

TEST_CASE("lemmatize") {
  const auto& res = nlp_resources();
  const Lemmatizer lem(res.tags, res.lemma_exceptions);
  CHECK(lem.lemma_of("running", PosTag::VBG) == "run");
  CHECK(lem.lemma_of("happy", PosTag::JJ) == "happy");
  CHECK(lem.lemma_of("ate", PosTag::VBD) == "eat");
  CHECK(lem.lemma_of("went", PosTag::VBD) == "go");
  CHECK(lem.lemma_of("children", PosTag::NNS) == "child");
  CHECK(lem.lemma_of("dogs", PosTag::NNS) == "dog");
  CHECK(lem.lemma_of("boxes", PosTag::NNS) == "box");
  CHECK(lem.lemma_of("Is", PosTag::VBZ) == "be");
  CHECK(lem.lemma_of("bigger", PosTag::JJ) == "big");
  CHECK(lem.lemma_of("I", PosTag::PRP) == "i");
  CHECK(lem.lemma_of("blorging", PosTag::VBG) == "blorging");

  auto t = lem.lemmatize(TaggedToken{Token{"Crying", 3}, PosTag::VBG, {}});
  CHECK(t.lemma == "cry");
  CHECK(t.token.index == 3);
}

TEST_CASE("lemmatize is idempotent over the whole tag lexicon") {
  const auto& res = nlp_resources();
  const Lemmatizer lem(res.tags, res.lemma_exceptions);
  std::size_t failures = 0;
  for (const auto& [word, tag] : res.tags.entries()) {
    const auto lemma = lem.lemma_of(word, tag);
    if (lemma.empty() || lem.lemma_of(lemma, tag) != lemma ||
        lemma != signbridge::nlp::to_lower(lemma)) {
      if (++failures < 10) MESSAGE(word << " -> " << lemma << " -> " << lem.lemma_of(lemma, tag));
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("extract_keywords") {
  const auto& res = nlp_resources();
  auto happy = extract_keywords("I am happy", res);
  CHECK(happy.tense == Tense::Present);
  CHECK(happy.keywords == std::vector<std::string>{"i", "happy"});

  auto empty = extract_keywords("", res);
  CHECK(empty.tense == Tense::None);
  CHECK(empty.keywords.empty());

  auto rice = extract_keywords("I will eat rice", res);
  CHECK(rice.tense == Tense::Future);
  CHECK(rice.keywords == std::vector<std::string>{"i", "eat", "rice"});

  CHECK(extract_keywords("I will eat rice", res) == rice);
}
