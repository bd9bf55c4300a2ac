#include "signbridge/lexicon/lexicon.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace signbridge::lexicon {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string describe(EntryKind kind, std::string_view gloss) {
  return std::string(to_string(kind)) + ":" + std::string(gloss);
}

fs::path resolve_against(const fs::path& root, const std::string& asset) {
  fs::path p(asset);
  return p.is_absolute() ? p : root / p;
}

}  // namespace

std::string_view to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::Word: return "Word";
    case EntryKind::Letter: return "Letter";
    case EntryKind::Digit: return "Digit";
    case EntryKind::TenseMarker: return "TenseMarker";
  }
  return "Word";
}

std::optional<EntryKind> parse_entry_kind(std::string_view name) {
  for (auto k : {EntryKind::Word, EntryKind::Letter, EntryKind::Digit, EntryKind::TenseMarker}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string asset_id(EntryKind kind, std::string_view gloss) {
  std::string prefix;
  switch (kind) {
    case EntryKind::Word: prefix = "word-"; break;
    case EntryKind::Letter: prefix = "letter-"; break;
    case EntryKind::Digit: prefix = "digit-"; break;
    case EntryKind::TenseMarker: prefix = "marker-"; break;
  }
  return prefix + std::string(gloss);
}

std::vector<std::pair<EntryKind, std::string>> mandatory_glosses() {
  std::vector<std::pair<EntryKind, std::string>> out;
  for (char c = 'a'; c <= 'z'; ++c) out.emplace_back(EntryKind::Letter, std::string(1, c));
  for (char c = '0'; c <= '9'; ++c) out.emplace_back(EntryKind::Digit, std::string(1, c));
  for (const char* m : {"before", "will", "now"}) out.emplace_back(EntryKind::TenseMarker, m);
  return out;
}

IncompleteMandatorySet::IncompleteMandatorySet(std::vector<std::string> missing)
    : Error("lexicon lacks " + std::to_string(missing.size()) +
            " mandatory entries: " + join(missing)),
      missing_(std::move(missing)) {}

std::string normalize_gloss(std::string_view gloss, EntryKind kind) {
  std::string g;
  for (char c : gloss) {
    auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) throw InvalidEntry("gloss must not contain whitespace");
    g += u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
  }
  if (g.empty()) throw InvalidEntry("gloss must not be empty");
  switch (kind) {
    case EntryKind::Letter:
      if (g.size() != 1 || g[0] < 'a' || g[0] > 'z') {
        throw InvalidEntry("letter gloss must be a single a-z character: " + g);
      }
      break;
    case EntryKind::Digit:
      if (g.size() != 1 || g[0] < '0' || g[0] > '9') {
        throw InvalidEntry("digit gloss must be a single 0-9 character: " + g);
      }
      break;
    case EntryKind::TenseMarker:
      if (g != "before" && g != "will" && g != "now") {
        throw InvalidEntry("tense marker gloss must be before, will or now: " + g);
      }
      break;
    case EntryKind::Word:
      break;
  }
  return g;
}

LexiconView::LexiconView() : data_(std::make_shared<Data>()) {}

LexiconView::LexiconView(std::uint64_t version, fs::path asset_root,
                         std::vector<LexiconEntry> entries) {
  auto data = std::make_shared<Data>();
  data->version = version;
  data->asset_root = std::move(asset_root);
  data->entries = std::move(entries);
  for (std::size_t i = 0; i < data->entries.size(); ++i) {
    const auto& e = data->entries[i];
    if (!data->by_id.emplace(asset_id(e), i).second) {
      throw DuplicateGloss("duplicate gloss " + describe(e.kind, e.gloss));
    }
  }
  data_ = std::move(data);
}

const LexiconEntry* LexiconView::find(std::string_view gloss, EntryKind kind) const {
  return find_by_asset_id(asset_id(kind, gloss));
}

const LexiconEntry* LexiconView::find_by_asset_id(std::string_view id) const {
  auto it = data_->by_id.find(id);
  return it == data_->by_id.end() ? nullptr : &data_->entries[it->second];
}

fs::path LexiconView::resolve(const LexiconEntry& entry) const {
  return resolve_against(data_->asset_root, entry.asset_path);
}

LexiconView load(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ManifestParseError("cannot open lexicon manifest: " + manifest_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ManifestParseError(manifest_path.string() + ": " + e.what());
  }

  std::uint64_t version = 0;
  std::vector<LexiconEntry> entries;
  try {
    if (!doc.is_object()) throw ManifestParseError("manifest must be a JSON object");
    version = doc.value("version", std::uint64_t{0});
    const auto& rows = doc.at("entries");
    if (!rows.is_array()) throw ManifestParseError("\"entries\" must be an array");
    for (const auto& row : rows) {
      auto kind = parse_entry_kind(row.at("kind").get<std::string>());
      if (!kind) throw ManifestParseError("unknown entry kind " + row.at("kind").dump());
      LexiconEntry e;
      e.kind = *kind;
      e.gloss = normalize_gloss(row.at("gloss").get<std::string>(), e.kind);
      e.asset_path = row.at("asset").get<std::string>();
      e.added_at_ms = row.value("added_at", std::int64_t{0});
      entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ManifestParseError(manifest_path.string() + ": " + e.what());
  } catch (const InvalidEntry& e) {
    throw ManifestParseError(manifest_path.string() + ": " + e.what());
  }

  const fs::path root = manifest_path.parent_path();
  for (const auto& e : entries) {
    auto p = resolve_against(root, e.asset_path);
    if (!fs::is_regular_file(p)) throw MissingAssetFile(p);
  }

  LexiconView view;
  try {
    view = LexiconView(version, root, std::move(entries));
  } catch (const DuplicateGloss& e) {
    throw ManifestParseError(manifest_path.string() + ": " + e.what());
  }

  std::vector<std::string> missing;
  for (const auto& [kind, gloss] : mandatory_glosses()) {
    if (view.find(gloss, kind) == nullptr) missing.push_back(describe(kind, gloss));
  }
  if (!missing.empty()) throw IncompleteMandatorySet(std::move(missing));
  return view;
}

std::string manifest_json(std::uint64_t version, const std::vector<LexiconEntry>& entries) {
  json rows = json::array();
  for (const auto& e : entries) {
    rows.push_back({{"gloss", e.gloss},
                    {"kind", to_string(e.kind)},
                    {"asset", e.asset_path},
                    {"added_at", e.added_at_ms}});
  }
  json doc = {{"version", version}, {"entries", std::move(rows)}};
  return doc.dump(2) + "\n";
}

LexiconStore::LexiconStore(fs::path manifest_path) : manifest_path_(std::move(manifest_path)) {
  stamp_ = stamp();
  view_ = load(manifest_path_);
}

LexiconStore::Stamp LexiconStore::stamp() const {
  std::error_code ec;
  Stamp s;
  s.mtime = fs::last_write_time(manifest_path_, ec);
  s.size = fs::file_size(manifest_path_, ec);
  return s;
}

void LexiconStore::refresh_locked() {
  auto current = stamp();
  if (current == stamp_) return;
  // A half-edited or broken file keeps the last good view in service.
  try {
    view_ = load(manifest_path_);
    stamp_ = current;
  } catch (const Error&) {
  }
}

LexiconView LexiconStore::snapshot() {
  std::lock_guard lock(mutex_);
  refresh_locked();
  return view_;
}

std::uint64_t LexiconStore::add_entry(std::string_view gloss, EntryKind kind,
                                      std::string_view asset_path) {
  std::lock_guard lock(mutex_);
  refresh_locked();

  LexiconEntry entry;
  entry.kind = kind;
  entry.gloss = normalize_gloss(gloss, kind);
  entry.asset_path = std::string(asset_path);
  entry.added_at_ms = now_ms();

  if (view_.find(entry.gloss, kind) != nullptr) {
    throw DuplicateGloss("gloss already registered: " + describe(kind, entry.gloss));
  }
  auto resolved = resolve_against(view_.asset_root(), entry.asset_path);
  if (!fs::is_regular_file(resolved)) throw MissingAssetFile(resolved);

  auto entries = view_.entries();
  entries.push_back(std::move(entry));
  const std::uint64_t version = view_.version() + 1;
  LexiconView next(version, view_.asset_root(), entries);

  detail::write_file_atomic(manifest_path_, manifest_json(version, entries));
  view_ = std::move(next);
  stamp_ = stamp();
  return version;
}

namespace detail {

void write_file_atomic(const fs::path& path, std::string_view content,
                       const std::function<void()>& before_commit) {
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(rd());

  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error("cannot create " + tmp.string() + ": " + std::strerror(errno));
  const char* p = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      fs::remove(tmp);
      throw Error("write failed for " + tmp.string() + ": " + std::strerror(err));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);

  if (before_commit) {
    // Leave the temp file behind on failure, as a crash would.
    before_commit();
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace detail

}  // namespace signbridge::lexicon
