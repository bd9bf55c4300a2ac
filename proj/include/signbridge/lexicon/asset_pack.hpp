#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace signbridge::lexicon {

/// Container type recognised from the leading bytes: "mp4" or "webm".
std::optional<std::string> sniff_video_container(std::string_view bytes);

/// A tiny MP4-branded placeholder (ftyp box plus a free box carrying label).
/// Enough for container sniffing and byte-exact delivery tests; it does not
/// decode to frames.
std::string placeholder_clip(std::string_view label);

/// Writes dir/manifest.json and dir/assets/*.mp4 holding the 39 mandatory
/// entries plus one Word entry per extra word. Returns the manifest path.
std::filesystem::path write_stub_pack(const std::filesystem::path& dir,
                                      const std::vector<std::string>& words);

}  // namespace signbridge::lexicon
