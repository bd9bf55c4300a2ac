#include "signbridge/recognizer/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

#include "signbridge/recognizer/dataset.hpp"

namespace signbridge::recognizer {

namespace {

constexpr std::uint64_t kTemplateSeed = 0x5167a11e5ULL;

struct FingerShape {
  double base_angle;   // direction of the knuckle from the wrist, radians from "up"
  double base_length;  // wrist to first joint
  std::array<double, 3> segments;
  double max_bend;     // per-joint bend at full curl
};

// thumb, index, middle, ring, pinky
constexpr std::array<FingerShape, 5> kFingers = {{
    {-0.95, 0.13, {0.12, 0.10, 0.08}, 0.6},
    {-0.28, 0.36, {0.14, 0.09, 0.08}, 1.5},
    {0.0, 0.37, {0.16, 0.10, 0.08}, 1.5},
    {0.22, 0.35, {0.15, 0.09, 0.08}, 1.5},
    {0.45, 0.31, {0.11, 0.07, 0.07}, 1.5},
}};

struct Pose {
  std::array<double, 5> curl{};
  std::array<double, 5> spread{};
  double tilt = 0.0;
};

struct ClassTemplate {
  Pose right;
  bool two_handed = false;
  Pose left;
};

Pose pose_from_code(unsigned code, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> wobble(-0.05, 0.05);
  std::uniform_real_distribution<double> spread(-0.15, 0.15);
  std::uniform_real_distribution<double> tilt(-0.3, 0.3);
  Pose p;
  for (int f = 0; f < 5; ++f) {
    p.curl[f] = ((code >> f) & 1U ? 0.9 : 0.05) + wobble(rng);
    p.spread[f] = spread(rng);
  }
  p.tilt = tilt(rng);
  return p;
}

std::vector<unsigned> code_order() {
  std::vector<unsigned> codes(32);
  std::iota(codes.begin(), codes.end(), 0U);
  std::mt19937_64 rng(kTemplateSeed);
  std::shuffle(codes.begin(), codes.end(), rng);
  return codes;
}

ClassTemplate make_template(std::size_t k) {
  static const auto codes = code_order();
  std::mt19937_64 rng(kTemplateSeed + 1 + k);
  ClassTemplate t;
  t.right = pose_from_code(codes[k % codes.size()], rng);
  t.two_handed = (k % 4 == 3) || ((k / codes.size()) % 2 == 1);
  t.left = pose_from_code(codes[(k * 7 + 3) % codes.size()], rng);
  return t;
}

// Hand-local landmarks: wrist at the origin, fingers pointing up (+y).
std::vector<Point2> skeleton(const Pose& pose) {
  std::vector<Point2> pts(kPointsPerHand);
  pts[0] = {0.0, 0.0};
  for (int f = 0; f < 5; ++f) {
    const auto& shape = kFingers[f];
    double angle = shape.base_angle + pose.spread[f];
    std::size_t idx = 1 + 4 * static_cast<std::size_t>(f);
    Point2 joint{std::sin(shape.base_angle) * shape.base_length,
                 std::cos(shape.base_angle) * shape.base_length};
    pts[idx] = joint;
    for (int s = 0; s < 3; ++s) {
      angle += pose.curl[f] * shape.max_bend;
      joint.x += std::sin(angle) * shape.segments[s];
      joint.y += std::cos(angle) * shape.segments[s];
      pts[idx + 1 + s] = joint;
    }
  }
  return pts;
}

Pose perturb(const Pose& base, std::mt19937_64& rng, double jitter) {
  std::normal_distribution<double> curl(0.0, 0.04 * jitter);
  std::normal_distribution<double> spread(0.0, 0.03 * jitter);
  std::uniform_real_distribution<double> tilt(-0.15 * jitter, 0.15 * jitter);
  Pose p = base;
  for (int f = 0; f < 5; ++f) {
    p.curl[f] += curl(rng);
    p.spread[f] += spread(rng);
  }
  p.tilt += tilt(rng);
  return p;
}

Hand place_hand(const Pose& pose, Handedness side, double cx, double cy, double scale,
                std::mt19937_64& rng, double jitter) {
  std::normal_distribution<double> noise(0.0, 0.008 * jitter);
  const double mirror = side == Handedness::Left ? -1.0 : 1.0;
  const double c = std::cos(pose.tilt);
  const double s = std::sin(pose.tilt);
  Hand hand;
  hand.handedness = side;
  for (const auto& p : skeleton(pose)) {
    const double lx = mirror * p.x + noise(rng);
    const double ly = p.y + noise(rng);
    // image y grows downward
    hand.points.push_back({cx + scale * (c * lx - s * ly), cy - scale * (s * lx + c * ly)});
  }
  return hand;
}

}  // namespace

std::vector<std::string> synthetic_labels(std::size_t classes) {
  std::vector<std::string> labels;
  const auto& defaults = default_sign_labels();
  for (std::size_t k = 0; k < classes; ++k) {
    if (k < defaults.size()) {
      labels.push_back(defaults[k]);
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "class-%02zu", k);
      labels.emplace_back(buf);
    }
  }
  return labels;
}

std::vector<LandmarkFrame> synthesize_frames(const SynthConfig& config) {
  if (config.classes < 2) throw std::invalid_argument("synthetic data needs at least 2 classes");
  if (config.per_class < 1) throw std::invalid_argument("per-class count must be at least 1");
  if (!(config.jitter >= 0.0)) throw std::invalid_argument("jitter must be non-negative");

  const auto labels = synthetic_labels(config.classes);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> center(0.3, 0.7);
  std::uniform_real_distribution<double> scale(0.12, 0.25);

  std::vector<LandmarkFrame> frames;
  frames.reserve(config.classes * config.per_class);
  std::int64_t t = 0;
  for (std::size_t k = 0; k < config.classes; ++k) {
    const auto tmpl = make_template(k);
    for (std::size_t i = 0; i < config.per_class; ++i) {
      LandmarkFrame frame;
      frame.timestamp_ms = t;
      t += 33;
      frame.label = labels[k];
      const double size = scale(rng);
      const double cy = center(rng);
      if (tmpl.two_handed) {
        const double cx = center(rng);
        const Pose left = perturb(tmpl.left, rng, config.jitter);
        frame.hands.push_back(
            place_hand(left, Handedness::Left, cx - 0.2, cy, size, rng, config.jitter));
        const Pose right = perturb(tmpl.right, rng, config.jitter);
        frame.hands.push_back(
            place_hand(right, Handedness::Right, cx + 0.2, cy, size, rng, config.jitter));
      } else {
        const double cx = center(rng);
        const Pose right = perturb(tmpl.right, rng, config.jitter);
        frame.hands.push_back(
            place_hand(right, Handedness::Right, cx, cy, size, rng, config.jitter));
      }
      frames.push_back(std::move(frame));
    }
  }
  return frames;
}

}  // namespace signbridge::recognizer
