#include "signbridge/lexicon/asset_pack.hpp"

#include <cstdint>
#include <fstream>

#include "signbridge/error.hpp"
#include "signbridge/lexicon/lexicon.hpp"

namespace signbridge::lexicon {

namespace fs = std::filesystem;

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out += static_cast<char>((v >> 24) & 0xff);
  out += static_cast<char>((v >> 16) & 0xff);
  out += static_cast<char>((v >> 8) & 0xff);
  out += static_cast<char>(v & 0xff);
}

}  // namespace

std::optional<std::string> sniff_video_container(std::string_view bytes) {
  if (bytes.size() >= 12 && bytes.substr(4, 4) == "ftyp") return "mp4";
  if (bytes.size() >= 4 && bytes.substr(0, 4) == "\x1A\x45\xDF\xA3") return "webm";
  return std::nullopt;
}

std::string placeholder_clip(std::string_view label) {
  std::string out;
  put_u32(out, 24);
  out += "ftypisom";
  put_u32(out, 0x200);
  out += "isommp41";
  put_u32(out, static_cast<std::uint32_t>(8 + label.size()));
  out += "free";
  out += label;
  return out;
}

fs::path write_stub_pack(const fs::path& dir, const std::vector<std::string>& words) {
  fs::create_directories(dir / "assets");
  std::vector<LexiconEntry> entries;
  auto add = [&](EntryKind kind, const std::string& gloss) {
    const std::string file = "assets/" + asset_id(kind, gloss) + ".mp4";
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / file).string());
    out << placeholder_clip(gloss);
    entries.push_back({gloss, kind, file, 0});
  };
  for (const auto& [kind, gloss] : mandatory_glosses()) add(kind, gloss);
  for (const auto& w : words) add(EntryKind::Word, normalize_gloss(w, EntryKind::Word));

  const fs::path manifest = dir / "manifest.json";
  std::ofstream out(manifest);
  if (!out) throw Error("cannot write " + manifest.string());
  out << manifest_json(1, entries);
  return manifest;
}

}  // namespace signbridge::lexicon
