#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "signbridge/error.hpp"

namespace signbridge::recognizer {

inline constexpr std::size_t kPointsPerHand = 21;
inline constexpr std::size_t kHandFeatures = 2 * kPointsPerHand;
inline constexpr std::size_t kFeatureSize = 2 * kHandFeatures;

enum class Handedness { Left, Right };

std::string_view to_string(Handedness h);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

struct Hand {
  Handedness handedness = Handedness::Right;
  std::vector<Point2> points;  // 21 landmarks, index 0 is the wrist

  bool operator==(const Hand&) const = default;
};

struct LandmarkFrame {
  std::int64_t timestamp_ms = 0;
  std::vector<Hand> hands;
  std::optional<std::string> label;

  bool operator==(const LandmarkFrame&) const = default;
};

/// [left hand 42 | right hand 42], each (x0, y0, ..., x20, y20).
using FeatureVector = std::array<double, kFeatureSize>;

class InvalidFrame : public Error {
 public:
  using Error::Error;
};

/// Throws InvalidFrame for a wrong point count, a repeated handedness, more
/// than two hands, or a non-finite coordinate.
void validate_frame(const LandmarkFrame& frame);

/// Wrist-relative, max-abs scaled encoding. Each present hand has its wrist
/// subtracted from every point, then all 42 coordinates are divided by the
/// largest magnitude among them (a hand with all points equal encodes as
/// zeros). Absent hands leave their slot zero.
FeatureVector normalize_features(const LandmarkFrame& frame);

// Wire format: {"t": ms, "hands": [{"handedness": "Left|Right",
// "points": [[x, y], ...]}], "label": "optional"}. A third coordinate per
// point is accepted and dropped.
nlohmann::json frame_to_json(const LandmarkFrame& frame);
LandmarkFrame frame_from_json(const nlohmann::json& doc);

/// One frame per non-empty line. Errors name the offending line.
std::vector<LandmarkFrame> read_frames_jsonl(const std::filesystem::path& path);
void write_frames_jsonl(const std::filesystem::path& path,
                        const std::vector<LandmarkFrame>& frames);
std::string frames_to_jsonl(const std::vector<LandmarkFrame>& frames);

}  // namespace signbridge::recognizer
