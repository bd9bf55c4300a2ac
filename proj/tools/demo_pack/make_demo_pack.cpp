// Renders a text-card clip for every gloss and writes a lexicon manifest.
//
//   make_demo_pack <out-dir> [word ...]
//
// Without words the built-in demo vocabulary is used.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <opencv2/imgproc.hpp>
#include <opencv2/videoio.hpp>

#include "signbridge/lexicon/lexicon.hpp"

namespace fs = std::filesystem;
using signbridge::lexicon::EntryKind;

namespace {

const std::vector<std::string> kDemoWords = {
    "hello", "happy", "sad",  "eat",   "rice",  "go",    "school", "help",   "need",
    "thank", "good",  "morning", "name", "love", "stop", "careful", "yes",   "no",
    "sorry", "please", "water", "home", "family", "friend", "work", "book", "read",
};

cv::Scalar card_color(EntryKind kind) {
  switch (kind) {
    case EntryKind::Word: return {120, 70, 30};
    case EntryKind::Letter: return {40, 110, 40};
    case EntryKind::Digit: return {30, 60, 130};
    case EntryKind::TenseMarker: return {110, 30, 110};
  }
  return {0, 0, 0};
}

void render(const fs::path& path, const std::string& text, EntryKind kind) {
  constexpr int kWidth = 320, kHeight = 240, kFrames = 18;
  cv::VideoWriter writer(path.string(), cv::VideoWriter::fourcc('m', 'p', '4', 'v'), 12.0,
                         {kWidth, kHeight});
  if (!writer.isOpened()) throw std::runtime_error("cannot open video writer for " + path.string());
  const double scale = text.size() > 6 ? 1.2 : 2.0;
  int baseline = 0;
  auto size = cv::getTextSize(text, cv::FONT_HERSHEY_SIMPLEX, scale, 3, &baseline);
  for (int i = 0; i < kFrames; ++i) {
    cv::Mat frame(kHeight, kWidth, CV_8UC3, card_color(kind));
    // a bar that grows across the clip so playback is visibly progressing
    cv::rectangle(frame, {0, kHeight - 10}, {kWidth * (i + 1) / kFrames, kHeight}, {230, 230, 230},
                  cv::FILLED);
    cv::putText(frame, text, {(kWidth - size.width) / 2, (kHeight + size.height) / 2},
                cv::FONT_HERSHEY_SIMPLEX, scale, {255, 255, 255}, 3, cv::LINE_AA);
    writer.write(frame);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_demo_pack <out-dir> [word ...]\n";
    return 64;
  }
  const fs::path dir = argv[1];
  std::vector<std::string> words(argv + 2, argv + argc);
  if (words.empty()) words = kDemoWords;

  std::vector<std::pair<EntryKind, std::string>> glosses = signbridge::lexicon::mandatory_glosses();
  for (const auto& w : words) glosses.emplace_back(EntryKind::Word, w);

  try {
    fs::create_directories(dir / "assets");
    std::vector<signbridge::lexicon::LexiconEntry> entries;
    for (const auto& [kind, raw] : glosses) {
      const auto gloss = signbridge::lexicon::normalize_gloss(raw, kind);
      const auto id = signbridge::lexicon::asset_id(kind, gloss);
      const fs::path rel = fs::path("assets") / (id + ".mp4");
      std::string label = gloss;
      if (kind == EntryKind::Letter) label[0] = static_cast<char>(std::toupper(label[0]));
      if (kind == EntryKind::TenseMarker) label[0] = static_cast<char>(std::toupper(label[0]));
      render(dir / rel, label, kind);
      entries.push_back({gloss, kind, rel.generic_string(), 0});
    }
    signbridge::lexicon::detail::write_file_atomic(dir / "manifest.json",
                                                   signbridge::lexicon::manifest_json(1, entries));
    signbridge::lexicon::load(dir / "manifest.json");
    std::cout << "wrote " << entries.size() << " clips to " << dir << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
