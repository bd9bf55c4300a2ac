// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "report_checks.hpp"
#include "service_fixture.hpp"
#include "signbridge/gloss/planner.hpp"
#include "signbridge/nlp/keywords.hpp"
#include "signbridge/recognizer/evaluation.hpp"

namespace fs = std::filesystem;
namespace rz = signbridge::recognizer;
namespace nlp = signbridge::nlp;
namespace lex = signbridge::lexicon;
namespace gl = signbridge::gloss;
namespace st = signbridge::testing;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

// Collects failed expectations; the first few make up the detail line.
struct Failures {
  std::vector<std::string> items;
  void expect(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
  Outcome outcome(const std::string& success_detail) const {
    if (items.empty()) return {true, success_detail};
    std::string detail = std::to_string(items.size()) + " failure(s): ";
    for (std::size_t i = 0; i < std::min<std::size_t>(items.size(), 3); ++i) {
      detail += (i ? "; " : "") + items[i];
    }
    return {false, detail};
  }
};

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

// ---------------------------------------------------------------------------

Outcome golden_corpus() {
  std::ifstream in(st::fixture_dir() / "golden_corpus.tsv");
  if (!in) return {false, "fixture missing"};
  struct Row {
    std::string sentence, tense, keywords;
  };
  std::vector<Row> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream cells(line);
    Row r;
    std::getline(cells, r.sentence, '\t');
    std::getline(cells, r.tense, '\t');
    std::getline(cells, r.keywords, '\t');
    rows.push_back(r);
  }

  const auto start = Clock::now();
  auto resources = nlp::NlpResources::load(nlp::NlpDataPaths::in_directory(st::data_dir() / "nlp"));
  Failures f;
  for (const auto& r : rows) {
    auto got = nlp::extract_keywords(r.sentence, resources);
    const std::string tense(nlp::to_string(got.tense));
    f.expect(tense == r.tense && join(got.keywords) == r.keywords,
             "\"" + r.sentence + "\" gave " + tense + " [" + join(got.keywords) + "]");
  }
  const double elapsed = seconds_since(start);
  f.expect(rows.size() == 25, "expected 25 sentences, found " + std::to_string(rows.size()));
  f.expect(elapsed < 1.0, "took " + fmt(elapsed) + " s");
  return f.outcome(std::to_string(rows.size()) + "/" + std::to_string(rows.size()) + " exact, " +
                   fmt(elapsed * 1000, 4) + " ms including data load");
}

// ---------------------------------------------------------------------------

std::vector<nlp::TaggedToken> tagged(const std::vector<nlp::PosTag>& tags) {
  std::vector<nlp::TaggedToken> out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    out.push_back({{"w" + std::to_string(i), i}, tags[i], ""});
  }
  return out;
}

// Independent statement of the rule: count the groups, largest wins, ties
// resolved future, then past, then present.
nlp::Tense oracle_tense(const std::vector<nlp::PosTag>& tags, nlp::TenseCounts* counts) {
  using nlp::PosTag;
  nlp::TenseCounts c{};
  for (auto t : tags) {
    if (t == PosTag::VBD || t == PosTag::VBN) ++c.past;
    if (t == PosTag::VBG || t == PosTag::VBP || t == PosTag::VBZ) ++c.present;
    if (t == PosTag::MD) ++c.future;
  }
  *counts = c;
  if (c.past == 0 && c.present == 0 && c.future == 0) return nlp::Tense::None;
  if (c.future >= c.past && c.future >= c.present) return nlp::Tense::Future;
  if (c.past >= c.present) return nlp::Tense::Past;
  return nlp::Tense::Present;
}

Outcome tense_rules() {
  using nlp::PosTag;
  using nlp::Tense;
  Failures f;
  std::size_t cases = 0;
  auto check = [&](const std::vector<PosTag>& tags, Tense want, const std::string& label) {
    ++cases;
    auto got = nlp::detect_tense(tagged(tags));
    nlp::TenseCounts expect_counts;
    oracle_tense(tags, &expect_counts);
    f.expect(got.tense == want, label + ": got " + std::string(nlp::to_string(got.tense)));
    f.expect(got.counts == expect_counts, label + ": counts differ");
  };

  // each tag group on its own
  check({PosTag::VBD}, Tense::Past, "VBD");
  check({PosTag::VBN}, Tense::Past, "VBN");
  check({PosTag::VBG}, Tense::Present, "VBG");
  check({PosTag::VBP}, Tense::Present, "VBP");
  check({PosTag::VBZ}, Tense::Present, "VBZ");
  check({PosTag::MD}, Tense::Future, "MD");
  for (std::size_t i = 0; i < nlp::kPosTagCount; ++i) {
    auto t = static_cast<PosTag>(i);
    if (t == PosTag::VBD || t == PosTag::VBN || t == PosTag::VBG || t == PosTag::VBP ||
        t == PosTag::VBZ || t == PosTag::MD) {
      continue;
    }
    check({t, t}, Tense::None, std::string(nlp::to_string(t)) + " alone");
  }
  check({}, Tense::None, "empty");

  // ties
  check({PosTag::MD, PosTag::VBD}, Tense::Future, "future=past");
  check({PosTag::MD, PosTag::VBZ}, Tense::Future, "future=present");
  check({PosTag::VBD, PosTag::VBP}, Tense::Past, "past=present");
  check({PosTag::VBN, PosTag::VBG, PosTag::MD}, Tense::Future, "three-way tie");
  check({PosTag::MD, PosTag::MD, PosTag::VBD, PosTag::VBN, PosTag::VBZ, PosTag::VBG}, Tense::Future,
        "two-each tie");
  check({PosTag::VBD, PosTag::VBN, PosTag::VBG, PosTag::VBZ, PosTag::PRP}, Tense::Past, "past=present 2");

  // strict majorities beat the tie order
  check({PosTag::MD, PosTag::VBD, PosTag::VBN}, Tense::Past, "past majority");
  check({PosTag::MD, PosTag::VBG, PosTag::VBP}, Tense::Present, "present over future");
  check({PosTag::VBD, PosTag::VBZ, PosTag::VBG}, Tense::Present, "present over past");
  check({PosTag::VB, PosTag::VB, PosTag::VBD}, Tense::Past, "VB is not counted");

  // permutation invariance and agreement with the oracle on random sequences
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 2000; ++n) {
    std::vector<PosTag> tags(rng() % 9);
    for (auto& t : tags) t = static_cast<PosTag>(rng() % nlp::kPosTagCount);
    nlp::TenseCounts c;
    auto want = oracle_tense(tags, &c);
    check(tags, want, "random #" + std::to_string(n));
    std::shuffle(tags.begin(), tags.end(), rng);
    check(tags, want, "shuffled #" + std::to_string(n));
  }

  // whole sentences through the tagger
  const auto& res = [] () -> const nlp::NlpResources& {
    static auto r = nlp::NlpResources::load(nlp::NlpDataPaths::in_directory(st::data_dir() / "nlp"));
    return r;
  }();
  struct S {
    const char* text;
    Tense tense;
    nlp::TenseCounts counts;
  };
  for (const auto& s : {S{"I will go", Tense::Future, {0, 0, 1}}, S{"I ate", Tense::Past, {1, 0, 0}},
                        S{"the dog", Tense::None, {0, 0, 0}}}) {
    ++cases;
    auto got = nlp::extract_keywords(s.text, res);
    f.expect(got.tense == s.tense && got.counts == s.counts, std::string("sentence \"") + s.text + "\"");
  }
  return f.outcome(std::to_string(cases) + " cases");
}

// ---------------------------------------------------------------------------

Outcome fingerspelling_totality() {
  st::TempDir tmp;
  auto view = lex::load(lex::write_stub_pack(tmp.path(), {"happy", "eat", "rice", "school", "hello"}));
  std::mt19937_64 rng(99);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  Failures f;
  std::size_t words = 0;
  std::size_t entries = 0;
  while (words < 1000) {
    std::string w(1 + rng() % 12, 'a');
    for (auto& c : w) c = alphabet[rng() % alphabet.size()];
    if (view.find_word(w)) continue;
    ++words;
    const std::vector<std::string> keywords = {w};
    const auto tense = static_cast<nlp::Tense>(rng() % 4);
    auto plan = gl::plan_glosses(tense, keywords, view);
    auto manifest = gl::emit_playlist(w, tense, keywords, plan, view);
    const std::size_t marker = gl::tense_marker(tense) ? 1 : 0;
    f.expect(manifest.entries.size() == w.size() + marker,
             w + ": " + std::to_string(manifest.entries.size()) + " entries");
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
      const auto& e = manifest.entries[i];
      ++entries;
      const auto prefix = std::string(gl::kDefaultAssetUriPrefix);
      const auto* entry = e.asset_uri.rfind(prefix, 0) == 0
                              ? view.find_by_asset_id(std::string_view(e.asset_uri).substr(prefix.size()))
                              : nullptr;
      f.expect(entry && fs::is_regular_file(view.resolve(*entry)), w + ": unresolved " + e.asset_uri);
      if (i < marker) continue;
      const char c = w[i - marker];
      const bool digit = c >= '0' && c <= '9';
      f.expect(e.item.kind == (digit ? lex::EntryKind::Digit : lex::EntryKind::Letter) &&
                   e.item.value == std::string(1, digit ? c : static_cast<char>(c - 'a' + 'A')),
               w + ": entry " + std::to_string(i) + " is " + e.item.value);
    }
  }
  return f.outcome(std::to_string(words) + " words, " + std::to_string(entries) + " entries resolved");
}

// ---------------------------------------------------------------------------

Outcome hot_add() {
  const auto start = Clock::now();
  st::TempDir tmp;
  const auto manifest = lex::write_stub_pack(tmp.path(), {"happy"});
  const auto& res = [] () -> const nlp::NlpResources& {
    static auto r = nlp::NlpResources::load(nlp::NlpDataPaths::in_directory(st::data_dir() / "nlp"));
    return r;
  }();
  lex::LexiconStore writer(manifest);
  lex::LexiconStore reader(manifest);  // stands in for a running service
  Failures f;

  auto before = gl::translate("Thanks", res, reader.snapshot());
  f.expect(before.entries.size() == 5 &&
               std::all_of(before.entries.begin(), before.entries.end(),
                           [](const gl::PlaylistEntry& e) { return e.item.kind == lex::EntryKind::Letter; }),
           "before the add \"Thanks\" should be spelled T-H-A-N-K");

  std::ofstream(tmp.path() / "assets" / "word-thank.mp4", std::ios::binary) << lex::placeholder_clip("thank");
  writer.add_entry("thank", lex::EntryKind::Word, "assets/word-thank.mp4");

  for (auto* store : {&writer, &reader}) {
    auto after = gl::translate("Thanks", res, store->snapshot());
    f.expect(after.entries.size() == 1 && after.entries[0].item.kind == lex::EntryKind::Word &&
                 after.entries[0].item.value == "thank" && after.entries[0].asset_uri == "/api/assets/word-thank",
             store == &writer ? "writer does not see the word" : "reader does not see the word");
  }
  const double elapsed = seconds_since(start);
  f.expect(elapsed < 5.0, "took " + fmt(elapsed) + " s");
  return f.outcome("new word visible without reload, " + fmt(elapsed * 1000, 3) + " ms");
}

// ---------------------------------------------------------------------------

Outcome gradient_check() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> normal(0.0, 1.0);
  Failures f;
  double worst = 0.0;
  for (int m = 0; m < 20; ++m) {
    std::vector<std::size_t> dims = {3 + rng() % 6};
    const std::size_t hidden = 1 + rng() % 2;
    for (std::size_t h = 0; h < hidden; ++h) dims.push_back(2 + rng() % 6);
    dims.push_back(2 + rng() % 4);
    auto model = st::random_model(dims, rng);
    const std::size_t batch = 1 + rng() % 6;
    std::vector<std::vector<double>> inputs(batch, std::vector<double>(dims.front()));
    std::vector<std::size_t> labels;
    for (auto& x : inputs) {
      for (auto& v : x) v = normal(rng);
      labels.push_back(rng() % dims.back());
    }
    std::vector<std::span<const double>> views(inputs.begin(), inputs.end());
    rz::Gradients g;
    rz::loss_and_gradients(model, views, labels, g);
    const double err = st::relative_error(st::flatten(g), st::finite_difference_gradient(model, inputs, labels));
    worst = std::max(worst, err);
    f.expect(err < 1e-4, "model " + std::to_string(m) + " relative error " + fmt(err));
  }
  const double elapsed = seconds_since(start);
  f.expect(elapsed < 10.0, "took " + fmt(elapsed) + " s");
  return f.outcome("20 models, max relative error " + fmt(worst) + ", " + fmt(elapsed * 1000, 3) + " ms");
}

// ---------------------------------------------------------------------------

bool same_bits(const rz::FeatureVector& a, const rz::FeatureVector& b) {
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Outcome feature_invariance() {
  std::mt19937_64 rng(777);
  Failures f;
  for (int i = 0; i < 1000; ++i) {
    const auto frame = st::random_dyadic_frame(rng);
    const auto base = rz::normalize_features(frame);
    const double dx = st::dyadic(rng, -4 * 65536, 4 * 65536);
    const double dy = st::dyadic(rng, -4 * 65536, 4 * 65536);
    const double scale = std::ldexp(1.0, static_cast<int>(rng() % 9) - 4);  // 1/16 .. 16

    auto moved = frame;
    auto scaled = frame;
    auto both = frame;
    for (std::size_t h = 0; h < frame.hands.size(); ++h) {
      const auto w = frame.hands[h].points[0];
      for (std::size_t p = 0; p < rz::kPointsPerHand; ++p) {
        const auto q = frame.hands[h].points[p];
        moved.hands[h].points[p] = {q.x + dx, q.y + dy};
        scaled.hands[h].points[p] = {w.x + scale * (q.x - w.x), w.y + scale * (q.y - w.y)};
        both.hands[h].points[p] = {w.x + scale * (q.x - w.x) + dx, w.y + scale * (q.y - w.y) + dy};
      }
    }
    f.expect(same_bits(rz::normalize_features(moved), base), "frame " + std::to_string(i) + " translation");
    f.expect(same_bits(rz::normalize_features(scaled), base), "frame " + std::to_string(i) + " scale");
    f.expect(same_bits(rz::normalize_features(both), base), "frame " + std::to_string(i) + " both");
  }
  return f.outcome("1000 frames bitwise unchanged under translation and wrist-centred scaling");
}

// ---------------------------------------------------------------------------

std::optional<rz::TrainResult> g_surrogate;
std::optional<rz::LandmarkDataset> g_surrogate_data;

Outcome surrogate_training() {
  auto dataset = rz::LandmarkDataset::from_frames(rz::synthesize_frames({10, 200, 7, 1.0}));
  rz::TrainConfig cfg;
  cfg.epochs = 100;
  cfg.batch_size = 128;
  cfg.validation_fraction = 0.25;
  cfg.rng_seed = 7;

  Failures f;
  auto t0 = Clock::now();
  auto first = rz::train(dataset, cfg);
  const double run1 = seconds_since(t0);
  t0 = Clock::now();
  auto second = rz::train(dataset, cfg);
  const double run2 = seconds_since(t0);

  const double val = first.log.epochs.back().val_accuracy;
  f.expect(dataset.samples.size() == 2000, "dataset has " + std::to_string(dataset.samples.size()) + " samples");
  f.expect(first.split.validation.size() == 500, "validation split is " +
                                                     std::to_string(first.split.validation.size()));
  f.expect(val >= 0.95, "validation accuracy " + fmt(val, 4));
  f.expect(first.log == second.log, "logs differ between reruns");
  bool same_weights = first.model.layers().size() == second.model.layers().size();
  for (std::size_t l = 0; same_weights && l < first.model.layers().size(); ++l) {
    const auto& a = first.model.layers()[l];
    const auto& b = second.model.layers()[l];
    same_weights = a.weights.size() == b.weights.size() &&
                   std::memcmp(a.weights.data(), b.weights.data(), a.weights.size() * sizeof(double)) == 0 &&
                   std::memcmp(a.bias.data(), b.bias.data(), a.bias.size() * sizeof(double)) == 0;
  }
  f.expect(same_weights, "weights differ between reruns");
  f.expect(run1 < 60.0 && run2 < 60.0, "runs took " + fmt(run1) + " s and " + fmt(run2) + " s");

  g_surrogate = std::move(first);
  g_surrogate_data = std::move(dataset);
  return f.outcome("val_acc " + fmt(val, 4) + ", reruns identical, " + fmt(run1) + " s per run");
}

// ---------------------------------------------------------------------------

rz::LandmarkDataset subset(const rz::LandmarkDataset& ds, const std::vector<std::size_t>& idx) {
  rz::LandmarkDataset out{ds.classes, {}};
  for (auto i : idx) out.samples.push_back(ds.samples[i]);
  return out;
}

Outcome evaluation_integrity() {
  if (!g_surrogate) surrogate_training();
  const auto& ds = *g_surrogate_data;
  const auto& trained = g_surrogate->model;

  std::mt19937_64 rng(5);
  std::vector<std::pair<std::string, std::pair<const rz::MlpModel*, rz::LandmarkDataset>>> runs;
  auto untrained = st::random_model({rz::kFeatureSize, 64, 32, 10}, rng, 0.2);
  rz::MlpModel constant({rz::kFeatureSize, 10}, ds.classes);
  constant.layers()[0].bias[3] = 2.0;
  auto noisy = rz::LandmarkDataset::from_frames(rz::synthesize_frames({10, 50, 1234, 6.0}), ds.classes);
  // unbalanced: drop most of three classes
  rz::LandmarkDataset skewed{ds.classes, {}};
  for (const auto& s : ds.samples) {
    if (s.label >= 3 || rng() % 10 == 0) skewed.samples.push_back(s);
  }

  // rename rows so the model's class table matches the dataset by name
  rz::MlpModel renamed_untrained(untrained.dims(), ds.classes);
  renamed_untrained.layers() = untrained.layers();

  runs.push_back({"trained/full", {&trained, ds}});
  runs.push_back({"trained/validation", {&trained, subset(ds, g_surrogate->split.validation)}});
  runs.push_back({"trained/train", {&trained, subset(ds, g_surrogate->split.train)}});
  runs.push_back({"trained/noisy", {&trained, noisy}});
  runs.push_back({"trained/skewed", {&trained, skewed}});
  runs.push_back({"untrained", {&renamed_untrained, ds}});
  runs.push_back({"constant", {&constant, ds}});

  Failures f;
  std::string accuracies;
  for (const auto& [name, run] : runs) {
    auto report = rz::evaluate(*run.first, run.second);
    for (const auto& p : st::report_integrity_problems(report, run.second.class_counts())) {
      f.expect(false, name + ": " + p);
    }
    accuracies += (accuracies.empty() ? "" : ", ") + name + " " + fmt(report.accuracy, 3);
  }
  return f.outcome(std::to_string(runs.size()) + " reports consistent (" + accuracies + ")");
}

// ---------------------------------------------------------------------------

Outcome service_contract() {
  st::LiveService svc;
  auto c = svc.client();
  Failures f;
  auto status = [](const httplib::Result& r) { return r ? r->status : -1; };
  const std::string json_type = "application/json";

  const json creds = {{"username", "acceptance"}, {"password", "a-long-password"}};
  f.expect(status(c.Post("/api/signup", creds.dump(), json_type)) == 201, "signup");
  f.expect(status(c.Post("/api/signup", creds.dump(), json_type)) == 409, "duplicate signup");
  auto wrong = c.Post("/api/login", R"({"username":"acceptance","password":"not-the-password"})", json_type);
  auto unknown = c.Post("/api/login", R"({"username":"nobody","password":"not-the-password"})", json_type);
  f.expect(status(wrong) == 401 && status(unknown) == 401 && wrong->body == unknown->body,
           "bad credentials must give identical 401s");
  auto login = c.Post("/api/login", creds.dump(), json_type);
  f.expect(status(login) == 200, "login");
  if (status(login) != 200) return f.outcome("");
  const std::string token = json::parse(login->body)["token"];
  const auto auth = st::bearer(token);

  auto t1 = c.Post("/api/translate", auth, R"({"text":"I am happy"})", json_type);
  auto t2 = c.Post("/api/translate", auth, R"({"text":"I am happy"})", json_type);
  f.expect(status(t1) == 200 && json::parse(t1->body)["keywords"] == json({"i", "happy"}), "translate");
  f.expect(status(t2) == 200 && t1->body == t2->body, "repeated translate not byte-identical");

  auto frames = rz::synthesize_frames({4, 5, 31337, 1.0});
  json batch = json::array();
  for (std::size_t i = 5; i < 10; ++i) batch.push_back(rz::frame_to_json(frames[i]));
  auto rec = c.Post("/api/recognize", auth, json{{"frames", batch}}.dump(), json_type);
  f.expect(status(rec) == 200 && json::parse(rec->body)["label"] == *frames[5].label, "recognize");

  auto spelled = c.Post("/api/translate", auth, R"({"text":"thanks"})", json_type);
  f.expect(status(spelled) == 200 && json::parse(spelled->body)["entries"][0]["kind"] == "Letter",
           "thanks should be spelled before the add");
  const auto clip = lex::placeholder_clip("thanks");
  httplib::MultipartFormDataItems items = {{"gloss", "thanks", "", ""},
                                           {"kind", "Word", "", ""},
                                           {"asset", clip, "thanks.mp4", "video/mp4"}};
  f.expect(status(c.Post("/api/lexicon", auth, items)) == 201, "lexicon add");
  f.expect(status(c.Post("/api/lexicon", auth, items)) == 409, "duplicate lexicon add");
  auto t3 = c.Post("/api/translate", auth, R"({"text":"thanks"})", json_type);
  auto t4 = c.Post("/api/translate", auth, R"({"text":"thanks"})", json_type);
  f.expect(status(t3) == 200 && json::parse(t3->body)["entries"].size() == 1 &&
               json::parse(t3->body)["entries"][0]["kind"] == "Word",
           "hot-added word not used");
  f.expect(status(t4) == 200 && t3->body == t4->body, "translate after add not byte-identical");
  if (status(t3) == 200) {
    const std::string uri = json::parse(t3->body)["entries"][0]["asset_uri"];
    auto asset = c.Get(uri, auth);
    f.expect(status(asset) == 200 && asset->body == clip, "asset bytes");
  }
  f.expect(status(c.Get("/api/assets/word-unknown", auth)) == 404, "unknown asset");

  // authentication boundary over the wire
  std::size_t probes = 0;
  for (const auto& route : signbridge::service::Api::routes()) {
    if (!route.requires_session) continue;
    std::string path = route.pattern;
    if (auto b = path.find('{'); b != std::string::npos) path = path.substr(0, b) + "word-happy";
    for (const std::string& bad : {std::string(), std::string("forged-token")}) {
      httplib::Headers h = bad.empty() ? httplib::Headers{} : st::bearer(bad);
      auto res = route.method == "GET" ? c.Get(path, h) : c.Post(path, h, R"({"text":"hi"})", json_type);
      ++probes;
      f.expect(status(res) == 401, route.method + " " + path + " without a valid token gave " +
                                       std::to_string(status(res)));
    }
  }
  for (const auto& [tok, want] : {std::pair<std::string, int>{"", 401}, {"forged-token", 401}, {token, 101}}) {
    const int got = st::ws_handshake_status(svc.port(), tok);
    f.expect(got == want, "websocket upgrade with token \"" + tok.substr(0, 12) + "\" gave " + std::to_string(got));
  }
  probes += 2;
  return f.outcome("sequence ok, " + std::to_string(probes) + " unauthenticated probes all 401");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"translation-golden-corpus", golden_corpus},
      {"tense-rule-suite", tense_rules},
      {"fingerspelling-totality", fingerspelling_totality},
      {"hot-add", hot_add},
      {"gradient-check", gradient_check},
      {"feature-invariance", feature_invariance},
      {"surrogate-training", surrogate_training},
      {"evaluation-integrity", evaluation_integrity},
      {"service-contract", service_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
