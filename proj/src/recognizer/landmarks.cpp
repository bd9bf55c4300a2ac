#include "signbridge/recognizer/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace signbridge::recognizer {

using nlohmann::json;

std::string_view to_string(Handedness h) { return h == Handedness::Left ? "Left" : "Right"; }

void validate_frame(const LandmarkFrame& frame) {
  if (frame.hands.size() > 2) throw InvalidFrame("a frame holds at most two hands");
  bool seen[2] = {false, false};
  for (const auto& hand : frame.hands) {
    auto slot = static_cast<std::size_t>(hand.handedness);
    if (seen[slot]) {
      throw InvalidFrame("duplicate " + std::string(to_string(hand.handedness)) + " hand");
    }
    seen[slot] = true;
    if (hand.points.size() != kPointsPerHand) {
      throw InvalidFrame("hand has " + std::to_string(hand.points.size()) +
                         " points, expected 21");
    }
    for (const auto& p : hand.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InvalidFrame("non-finite landmark coordinate");
      }
    }
  }
}

FeatureVector normalize_features(const LandmarkFrame& frame) {
  validate_frame(frame);
  FeatureVector features{};
  for (const auto& hand : frame.hands) {
    const std::size_t offset = hand.handedness == Handedness::Left ? 0 : kHandFeatures;
    const Point2 wrist = hand.points[0];
    double max_abs = 0.0;
    for (std::size_t i = 0; i < kPointsPerHand; ++i) {
      const double dx = hand.points[i].x - wrist.x;
      const double dy = hand.points[i].y - wrist.y;
      features[offset + 2 * i] = dx;
      features[offset + 2 * i + 1] = dy;
      max_abs = std::max({max_abs, std::abs(dx), std::abs(dy)});
    }
    for (std::size_t i = 0; i < kHandFeatures; ++i) {
      features[offset + i] = max_abs > 0.0 ? features[offset + i] / max_abs : 0.0;
    }
  }
  return features;
}

json frame_to_json(const LandmarkFrame& frame) {
  json hands = json::array();
  for (const auto& hand : frame.hands) {
    json points = json::array();
    for (const auto& p : hand.points) points.push_back({p.x, p.y});
    hands.push_back({{"handedness", to_string(hand.handedness)}, {"points", std::move(points)}});
  }
  json doc = {{"t", frame.timestamp_ms}, {"hands", std::move(hands)}};
  if (frame.label) doc["label"] = *frame.label;
  return doc;
}

LandmarkFrame frame_from_json(const json& doc) {
  try {
    LandmarkFrame frame;
    frame.timestamp_ms = doc.value("t", std::int64_t{0});
    for (const auto& h : doc.at("hands")) {
      Hand hand;
      const auto side = h.at("handedness").get<std::string>();
      if (side == "Left") {
        hand.handedness = Handedness::Left;
      } else if (side == "Right") {
        hand.handedness = Handedness::Right;
      } else {
        throw InvalidFrame("handedness must be Left or Right, got " + side);
      }
      for (const auto& p : h.at("points")) {
        if (!p.is_array() || p.size() < 2 || p.size() > 3) {
          throw InvalidFrame("each point must be [x, y] or [x, y, z]");
        }
        hand.points.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      frame.hands.push_back(std::move(hand));
    }
    if (doc.contains("label") && !doc["label"].is_null()) {
      frame.label = doc["label"].get<std::string>();
    }
    return frame;
  } catch (const json::exception& e) {
    throw InvalidFrame(std::string("malformed landmark frame: ") + e.what());
  }
}

std::vector<LandmarkFrame> read_frames_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<LandmarkFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      frames.push_back(frame_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InvalidFrame(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const InvalidFrame& e) {
      throw InvalidFrame(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return frames;
}

std::string frames_to_jsonl(const std::vector<LandmarkFrame>& frames) {
  std::string out;
  for (const auto& f : frames) out += frame_to_json(f).dump() + "\n";
  return out;
}

void write_frames_jsonl(const std::filesystem::path& path,
                        const std::vector<LandmarkFrame>& frames) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << frames_to_jsonl(frames);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace signbridge::recognizer
