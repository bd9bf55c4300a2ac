#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signbridge/error.hpp"

namespace signbridge::lexicon {

enum class EntryKind { Word, Letter, Digit, TenseMarker };

std::string_view to_string(EntryKind kind);
std::optional<EntryKind> parse_entry_kind(std::string_view name);

struct LexiconEntry {
  std::string gloss;
  EntryKind kind = EntryKind::Word;
  // Relative paths are resolved against the manifest's directory.
  std::string asset_path;
  std::int64_t added_at_ms = 0;

  bool operator==(const LexiconEntry&) const = default;
};

/// Stable identifier used in asset URIs, e.g. "word-hello", "letter-x".
std::string asset_id(EntryKind kind, std::string_view gloss);
inline std::string asset_id(const LexiconEntry& e) { return asset_id(e.kind, e.gloss); }

/// The 39 entries every pack must carry: letters a-z, digits 0-9 and the
/// markers "before", "will", "now".
std::vector<std::pair<EntryKind, std::string>> mandatory_glosses();

class ManifestParseError : public Error {
 public:
  using Error::Error;
};

class MissingAssetFile : public Error {
 public:
  explicit MissingAssetFile(std::filesystem::path path)
      : Error("asset file not found: " + path.string()), path_(std::move(path)) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

class IncompleteMandatorySet : public Error {
 public:
  explicit IncompleteMandatorySet(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class DuplicateGloss : public Error {
 public:
  using Error::Error;
};

// Gloss does not fit its kind (e.g. a two-character letter).
class InvalidEntry : public Error {
 public:
  using Error::Error;
};

/// Lowercases and validates a gloss for its kind; throws InvalidEntry.
std::string normalize_gloss(std::string_view gloss, EntryKind kind);

/// Immutable snapshot of the lexicon. Cheap to copy; copies share storage.
class LexiconView {
 public:
  LexiconView();
  LexiconView(std::uint64_t version, std::filesystem::path asset_root,
              std::vector<LexiconEntry> entries);

  std::uint64_t version() const { return data_->version; }
  std::size_t size() const { return data_->entries.size(); }
  const std::vector<LexiconEntry>& entries() const { return data_->entries; }
  const std::filesystem::path& asset_root() const { return data_->asset_root; }

  const LexiconEntry* find(std::string_view gloss, EntryKind kind) const;
  const LexiconEntry* find_word(std::string_view gloss) const {
    return find(gloss, EntryKind::Word);
  }
  const LexiconEntry* find_by_asset_id(std::string_view id) const;

  std::filesystem::path resolve(const LexiconEntry& entry) const;

 private:
  struct Data {
    std::uint64_t version = 0;
    std::filesystem::path asset_root;
    std::vector<LexiconEntry> entries;
    std::map<std::string, std::size_t, std::less<>> by_id;
  };
  std::shared_ptr<const Data> data_;
};

/// Parses and validates a manifest: JSON shape, asset existence, mandatory set.
LexiconView load(const std::filesystem::path& manifest_path);

/// Serializes entries in manifest form.
std::string manifest_json(std::uint64_t version, const std::vector<LexiconEntry>& entries);

/// File-backed lexicon with hot-add. One writer at a time; snapshot() is safe
/// from any thread and re-reads the manifest when its timestamp changes.
class LexiconStore {
 public:
  explicit LexiconStore(std::filesystem::path manifest_path);

  LexiconStore(const LexiconStore&) = delete;
  LexiconStore& operator=(const LexiconStore&) = delete;

  LexiconView snapshot();

  /// Registers a new entry and rewrites the manifest atomically.
  /// Returns the new version.
  std::uint64_t add_entry(std::string_view gloss, EntryKind kind, std::string_view asset_path);

  const std::filesystem::path& manifest_path() const { return manifest_path_; }

 private:
  struct Stamp {
    std::filesystem::file_time_type mtime;
    std::uintmax_t size = 0;
    bool operator==(const Stamp&) const = default;
  };
  Stamp stamp() const;
  void refresh_locked();

  std::filesystem::path manifest_path_;
  std::mutex mutex_;
  LexiconView view_;
  Stamp stamp_;
};

namespace detail {

/// Writes content to a temporary sibling, flushes it, then renames it over
/// path. before_commit runs between the write and the rename; if it throws,
/// the rename never happens and path is untouched.
void write_file_atomic(const std::filesystem::path& path, std::string_view content,
                       const std::function<void()>& before_commit = {});

}  // namespace detail

}  // namespace signbridge::lexicon
