#include "signbridge/cli/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "signbridge/gloss/planner.hpp"
#include "signbridge/lexicon/asset_pack.hpp"
#include "signbridge/nlp/keywords.hpp"
#include "signbridge/nlp/text.hpp"
#include "signbridge/recognizer/classifier.hpp"
#include "signbridge/recognizer/evaluation.hpp"
#include "signbridge/recognizer/smoother.hpp"
#include "signbridge/recognizer/synth.hpp"
#include "signbridge/recognizer/training.hpp"
#include "signbridge/service/server.hpp"

#ifndef SIGNBRIDGE_DEFAULT_DATA_DIR
#define SIGNBRIDGE_DEFAULT_DATA_DIR "data"
#endif

namespace signbridge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Operational failure with a message for stderr.
class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

fs::path default_nlp_dir() {
  return env_or("SIGNBRIDGE_NLP_DIR", std::string(SIGNBRIDGE_DEFAULT_DATA_DIR) + "/nlp");
}

fs::path default_manifest() {
  return env_or("SIGNBRIDGE_LEXICON", std::string(SIGNBRIDGE_DEFAULT_DATA_DIR) + "/lexicon/manifest.json");
}

void write_text(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) throw Failure("cannot write " + path);
}

recognizer::LandmarkDataset load_dataset(const fs::path& path) {
  auto frames = recognizer::read_frames_jsonl(path);
  if (frames.empty()) throw Failure("dataset is empty: " + path.string());
  return recognizer::LandmarkDataset::from_frames(frames);
}

struct TranslateOpts {
  std::string text;
  std::string lexicon = default_manifest().string();
  std::string nlp_dir = default_nlp_dir().string();
  bool keywords_only = false;
};

int cmd_translate(const TranslateOpts& o, std::ostream& out) {
  auto resources = nlp::NlpResources::load(nlp::NlpDataPaths::in_directory(o.nlp_dir));
  if (nlp::tokenize(nlp::normalize_text(o.text, resources.contractions)).empty()) {
    throw Failure("empty input");
  }
  if (o.keywords_only) {
    auto result = nlp::extract_keywords(o.text, resources);
    std::string line;
    if (auto marker = gloss::tense_marker(result.tense)) line = *marker;
    for (const auto& k : result.keywords) line += (line.empty() ? "" : " ") + k;
    out << line << '\n';
    return kExitOk;
  }
  lexicon::LexiconView view;
  try {
    view = lexicon::load(o.lexicon);
  } catch (const Error& e) {
    throw Failure(std::string("cannot load lexicon: ") + e.what());
  }
  std::vector<std::string> warnings;
  auto manifest = gloss::translate(o.text, resources, view, gloss::kDefaultAssetUriPrefix, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  out << gloss::to_json(manifest).dump(2) << '\n';
  return kExitOk;
}

struct LexiconOpts {
  std::string manifest = default_manifest().string();
  std::string gloss;
  std::string kind = "Word";
  std::string asset;
};

int cmd_lexicon_add(const LexiconOpts& o, std::ostream& out) {
  auto kind = lexicon::parse_entry_kind(o.kind);
  if (!kind) throw Failure("unknown kind " + o.kind);
  const fs::path asset = fs::absolute(o.asset);
  std::ifstream in(asset, std::ios::binary);
  if (!in) throw Failure("cannot read asset " + asset.string());
  std::string head(64, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  if (!lexicon::sniff_video_container(head)) throw Failure("asset is not an MP4 or WebM video");

  const auto dir = fs::absolute(o.manifest).parent_path();
  auto rel = asset.lexically_proximate(dir);
  const auto stored = rel.empty() || *rel.begin() == ".." ? asset : rel;
  lexicon::LexiconStore store(o.manifest);
  auto version = store.add_entry(o.gloss, *kind, stored.generic_string());
  out << json{{"gloss", lexicon::normalize_gloss(o.gloss, *kind)},
              {"kind", o.kind},
              {"asset", stored.generic_string()},
              {"version", version}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_lexicon_list(const LexiconOpts& o, std::ostream& out) {
  auto view = lexicon::load(o.manifest);
  for (const auto& e : view.entries()) {
    out << lexicon::to_string(e.kind) << '\t' << e.gloss << '\t' << e.asset_path << '\n';
  }
  return kExitOk;
}

int cmd_lexicon_check(const LexiconOpts& o, std::ostream& out) {
  try {
    auto view = lexicon::load(o.manifest);
    out << json{{"ok", true}, {"version", view.version()}, {"entries", view.size()}}.dump() << '\n';
    return kExitOk;
  } catch (const lexicon::IncompleteMandatorySet& e) {
    out << json{{"ok", false}, {"missing", e.missing()}}.dump() << '\n';
    throw Failure(e.what());
  } catch (const lexicon::MissingAssetFile& e) {
    out << json{{"ok", false}, {"missing_file", e.path().string()}}.dump() << '\n';
    throw Failure(e.what());
  }
}

struct SynthOpts {
  std::size_t classes = 10;
  std::size_t per_class = 200;
  std::uint64_t seed = 7;
  double jitter = 1.0;
  std::string out;
};

int cmd_synth(const SynthOpts& o, std::ostream& out) {
  if (o.classes < 2) throw Failure("--classes must be at least 2");
  if (o.per_class < 1) throw Failure("--per-class must be at least 1");
  auto frames = recognizer::synthesize_frames({o.classes, o.per_class, o.seed, o.jitter});
  write_text(o.out, recognizer::frames_to_jsonl(frames), out);
  return kExitOk;
}

int cmd_inspect(const std::string& data, std::ostream& out) {
  auto frames = recognizer::read_frames_jsonl(data);
  std::map<std::string, std::size_t> per_label;
  std::size_t hands[3] = {0, 0, 0};
  std::size_t unlabeled = 0;
  for (const auto& f : frames) {
    recognizer::validate_frame(f);
    if (f.label) ++per_label[*f.label];
    else ++unlabeled;
    ++hands[f.hands.size()];
  }
  out << json{{"frames", frames.size()},
              {"classes", per_label},
              {"unlabeled", unlabeled},
              {"hands", {{"0", hands[0]}, {"1", hands[1]}, {"2", hands[2]}}}}
             .dump(2)
      << '\n';
  return kExitOk;
}

struct TrainOpts {
  std::string data;
  std::string model = "model.json";
  std::string log = "train_log.csv";
  recognizer::TrainConfig config;
};

int cmd_train(const TrainOpts& o, std::ostream& out) {
  auto dataset = load_dataset(o.data);
  auto result = recognizer::train(dataset, o.config);
  recognizer::save_model(result.model, o.model);
  write_text(o.log, result.log.to_csv(), out);
  const auto& last = result.log.epochs.back();
  json summary = {{"epochs", result.log.epochs.size()},
                  {"train_loss", last.train_loss},
                  {"train_acc", last.train_accuracy},
                  {"val_acc", last.val_accuracy},
                  {"model", o.model}};
  if (o.log != "-") out << summary.dump() << '\n';
  return kExitOk;
}

struct EvalOpts {
  std::string model;
  std::string data;
  std::string out;
  std::string plot;
};

int cmd_eval(const EvalOpts& o, std::ostream& out) {
  auto model = recognizer::load_model(o.model);
  auto dataset = load_dataset(o.data);
  auto report = recognizer::evaluate(model, dataset);
  write_text(o.out, report.to_json().dump(2) + "\n", out);
  if (!o.plot.empty()) write_text(o.plot, report.curve_csv(), out);
  return kExitOk;
}

struct PredictOpts {
  std::string model;
  std::string frames;
  bool smooth = false;
  bool batch = false;
};

int cmd_predict(const PredictOpts& o, std::ostream& out) {
  auto model = recognizer::load_model(o.model);
  auto frames = recognizer::read_frames_jsonl(o.frames);
  if (frames.empty()) throw Failure("no frames in " + o.frames);
  std::vector<recognizer::Prediction> preds;
  for (const auto& f : frames) preds.push_back(recognizer::predict(model, f));
  if (o.batch) {
    auto vote = recognizer::majority_vote(preds);
    out << json{{"label", vote.label}, {"confidence", vote.confidence}}.dump() << '\n';
  } else if (o.smooth) {
    recognizer::StreamSmoother smoother;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (auto label = smoother.push(preds[i])) {
        out << json{{"t", frames[i].timestamp_ms}, {"label", *label}}.dump() << '\n';
      }
    }
  } else {
    for (std::size_t i = 0; i < preds.size(); ++i) {
      out << json{{"t", frames[i].timestamp_ms},
                  {"label", preds[i].label},
                  {"confidence", preds[i].confidence}}
                 .dump()
          << '\n';
    }
  }
  return kExitOk;
}

struct ServeOpts {
  service::ServiceConfig config;
  std::string model_path;
};

int cmd_serve(ServeOpts o, std::ostream& out) {
  if (!o.model_path.empty()) o.config.model_path = o.model_path;
  // Block the stop signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Api api(o.config);
  service::Server server(api, o.config.host, o.config.port, &out);
  server.start();
  std::cerr << "listening on " << o.config.host << ':' << server.port() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sign-language translation and recognition toolkit", "signbridge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  TranslateOpts translate_opts;
  auto* translate = app.add_subcommand("translate", "Compile a sentence into a gloss playlist");
  translate->add_option("--text", translate_opts.text, "English sentence")->required();
  translate->add_option("--lexicon", translate_opts.lexicon, "Lexicon manifest")->capture_default_str();
  translate->add_option("--nlp-dir", translate_opts.nlp_dir, "NLP data tables")->capture_default_str();
  translate->add_flag("--keywords-only", translate_opts.keywords_only,
                      "Print the tense marker and keywords only");

  LexiconOpts lex_opts;
  auto* lex = app.add_subcommand("lexicon", "Inspect or extend a lexicon manifest");
  lex->require_subcommand(1);
  auto* lex_add = lex->add_subcommand("add", "Register a new gloss");
  lex_add->add_option("--manifest", lex_opts.manifest)->capture_default_str();
  lex_add->add_option("--gloss", lex_opts.gloss)->required();
  lex_add->add_option("--kind", lex_opts.kind, "Word, Letter, Digit or TenseMarker")->capture_default_str();
  lex_add->add_option("--asset", lex_opts.asset, "MP4 or WebM clip")->required();
  auto* lex_list = lex->add_subcommand("list", "Print entries as TSV");
  lex_list->add_option("--manifest", lex_opts.manifest)->capture_default_str();
  auto* lex_check = lex->add_subcommand("check", "Validate a manifest");
  lex_check->add_option("--manifest", lex_opts.manifest)->capture_default_str();

  SynthOpts synth_opts;
  std::string inspect_path;
  auto* dataset = app.add_subcommand("dataset", "Landmark dataset tools");
  dataset->require_subcommand(1);
  auto* synth = dataset->add_subcommand("synth", "Generate a synthetic landmark dataset (JSONL)");
  synth->add_option("--classes", synth_opts.classes)->capture_default_str();
  synth->add_option("--per-class", synth_opts.per_class)->capture_default_str();
  synth->add_option("--seed", synth_opts.seed)->capture_default_str();
  synth->add_option("--jitter", synth_opts.jitter, "Noise multiplier")->capture_default_str();
  synth->add_option("--out", synth_opts.out, "Output file (stdout when omitted)");
  auto* inspect = dataset->add_subcommand("inspect", "Summarize a JSONL dataset");
  inspect->add_option("--data", inspect_path)->required();

  TrainOpts train_opts;
  auto* train = app.add_subcommand("train", "Train the landmark classifier");
  train->add_option("--data", train_opts.data, "Labelled JSONL frames")->required();
  train->add_option("--epochs", train_opts.config.epochs)->capture_default_str();
  train->add_option("--batch", train_opts.config.batch_size)->capture_default_str();
  train->add_option("--val", train_opts.config.validation_fraction)->capture_default_str();
  train->add_option("--lr", train_opts.config.learning_rate)->capture_default_str();
  train->add_option("--momentum", train_opts.config.momentum)->capture_default_str();
  train->add_option("--seed", train_opts.config.rng_seed)->capture_default_str();
  train->add_option("--model", train_opts.model, "Output model file")->capture_default_str();
  train->add_option("--log", train_opts.log, "Per-epoch CSV log ('-' for stdout)")->capture_default_str();

  EvalOpts eval_opts;
  auto* eval = app.add_subcommand("eval", "Confusion matrix and F1-confidence curve");
  eval->add_option("--model", eval_opts.model)->required();
  eval->add_option("--data", eval_opts.data)->required();
  eval->add_option("--out", eval_opts.out, "Report file (stdout when omitted)");
  eval->add_option("--plot", eval_opts.plot, "Write the curve as CSV here");

  PredictOpts predict_opts;
  auto* predict = app.add_subcommand("predict", "Classify frames from a JSONL file");
  predict->add_option("--model", predict_opts.model)->required();
  predict->add_option("--frames", predict_opts.frames)->required();
  auto* smooth_flag = predict->add_flag("--smooth", predict_opts.smooth, "Print smoothed transitions only");
  predict->add_flag("--batch", predict_opts.batch, "Print one majority label")->excludes(smooth_flag);

  ServeOpts serve_opts;
  serve_opts.config.lexicon_manifest = default_manifest();
  serve_opts.config.nlp_dir = default_nlp_dir();
  serve_opts.config.data_dir = "signbridge-data";
  auto* serve = app.add_subcommand("serve", "Run the HTTP/WebSocket service");
  serve->add_option("--host", serve_opts.config.host)->envname("SIGNBRIDGE_HOST")->capture_default_str();
  serve->add_option("--port", serve_opts.config.port)->envname("SIGNBRIDGE_PORT")->capture_default_str();
  serve->add_option("--lexicon-manifest", serve_opts.config.lexicon_manifest)
      ->envname("SIGNBRIDGE_LEXICON")
      ->capture_default_str();
  serve->add_option("--assets-dir", serve_opts.config.assets_dir, "Upload directory")
      ->envname("SIGNBRIDGE_ASSETS_DIR");
  serve->add_option("--model-path", serve_opts.model_path)->envname("SIGNBRIDGE_MODEL");
  serve->add_option("--data-dir", serve_opts.config.data_dir, "Account store directory")
      ->envname("SIGNBRIDGE_DATA_DIR")
      ->capture_default_str();
  serve->add_option("--nlp-dir", serve_opts.config.nlp_dir)->envname("SIGNBRIDGE_NLP_DIR")->capture_default_str();
  serve->add_option("--cors-origin", serve_opts.config.cors_origin)->envname("SIGNBRIDGE_CORS_ORIGIN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*translate) return cmd_translate(translate_opts, out);
    if (*lex_add) return cmd_lexicon_add(lex_opts, out);
    if (*lex_list) return cmd_lexicon_list(lex_opts, out);
    if (*lex_check) return cmd_lexicon_check(lex_opts, out);
    if (*synth) return cmd_synth(synth_opts, out);
    if (*inspect) return cmd_inspect(inspect_path, out);
    if (*train) return cmd_train(train_opts, out);
    if (*eval) return cmd_eval(eval_opts, out);
    if (*predict) return cmd_predict(predict_opts, out);
    if (*serve) return cmd_serve(serve_opts, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace signbridge::cli
