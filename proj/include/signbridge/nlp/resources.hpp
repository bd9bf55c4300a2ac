#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "signbridge/error.hpp"
#include "signbridge/nlp/types.hpp"

namespace signbridge::nlp {

// A bundled data file is missing or has a malformed line.
class DataFileError : public Error {
 public:
  using Error::Error;
};

/// Word -> most frequent tag. Keys are lowercase.
class TagLexicon {
 public:
  TagLexicon() = default;
  explicit TagLexicon(std::unordered_map<std::string, PosTag> entries);

  /// Reads "word<TAB>TAG" lines; blank lines and '#' comments are skipped.
  static TagLexicon load(const std::filesystem::path& path);

  std::optional<PosTag> lookup(std::string_view word) const;
  bool contains(std::string_view word) const { return lookup(word).has_value(); }
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, PosTag>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

/// Membership is tested on the lowercased word. "will" and "shall" are never
/// members, whatever the source file says.
class StopWordList {
 public:
  StopWordList() = default;
  StopWordList(std::initializer_list<std::string_view> words);

  static StopWordList load(const std::filesystem::path& path);

  void insert(std::string_view word);
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

class ContractionTable {
 public:
  ContractionTable() = default;
  ContractionTable(std::initializer_list<std::pair<std::string_view, std::string_view>> rows);

  static ContractionTable load(const std::filesystem::path& path);

  /// Expansion for a lowercase contraction with ASCII apostrophes.
  std::optional<std::string_view> expand(std::string_view lowered) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::unordered_map<std::string, std::string> rows_;
};

enum class LemmaClass { Noun, Verb, Adjective, Adverb };

std::string_view to_string(LemmaClass cls);

/// Irregular inflections: (form, class) -> lemma.
class LemmaExceptions {
 public:
  LemmaExceptions() = default;

  static LemmaExceptions load(const std::filesystem::path& path);

  void insert(std::string_view form, LemmaClass cls, std::string_view lemma);
  std::optional<std::string_view> lookup(std::string_view form, LemmaClass cls) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::pair<std::string, LemmaClass>, std::string, std::less<>> rows_;
};

struct NlpDataPaths {
  std::filesystem::path tag_lexicon;
  std::filesystem::path stop_words;
  std::filesystem::path lemma_exceptions;
  std::filesystem::path contractions;

  /// Standard file names inside one directory.
  static NlpDataPaths in_directory(const std::filesystem::path& dir);
};

/// Everything the text front end reads at startup. Immutable once loaded.
struct NlpResources {
  TagLexicon tags;
  StopWordList stop_words;
  LemmaExceptions lemma_exceptions;
  ContractionTable contractions;

  static NlpResources load(const NlpDataPaths& paths);
};

}  // namespace signbridge::nlp
