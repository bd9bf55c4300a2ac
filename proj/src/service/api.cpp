#include "signbridge/service/api.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "signbridge/gloss/planner.hpp"
#include "signbridge/lexicon/asset_pack.hpp"
#include "signbridge/nlp/keywords.hpp"
#include "signbridge/nlp/text.hpp"
#include "signbridge/recognizer/classifier.hpp"
#include "signbridge/service/multipart.hpp"

namespace signbridge::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBadCredentials = R"({"error":"invalid username or password"})";

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::optional<json> parse_json_object(const std::string& body) {
  auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  return doc;
}

bool segment_match(std::string_view pattern, std::string_view path, std::string* param) {
  auto brace = pattern.find('{');
  if (brace == std::string_view::npos) return pattern == path;
  if (path.substr(0, brace) != pattern.substr(0, brace)) return false;
  auto rest = path.substr(brace);
  if (rest.empty() || rest.find('/') != std::string_view::npos) return false;
  if (param) *param = std::string(rest);
  return true;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Bearer header first, then ?access_token= for clients that cannot set
// headers (video elements, browser WebSockets).
std::string request_token(const Request& request) {
  auto auth = request.header("authorization");
  constexpr std::string_view scheme = "bearer ";
  if (auth.size() > scheme.size() &&
      std::equal(scheme.begin(), scheme.end(), auth.begin(), [](char a, char b) {
        return a == std::tolower(static_cast<unsigned char>(b));
      })) {
    return auth.substr(scheme.size());
  }
  auto it = request.query.find("access_token");
  return it == request.query.end() ? std::string() : it->second;
}

std::string video_mime(const fs::path& p, std::string_view head) {
  auto kind = lexicon::sniff_video_container(head);
  if (kind == "webm") return "video/webm";
  if (kind == "mp4") return "video/mp4";
  auto ext = p.extension().string();
  return ext == ".webm" ? "video/webm" : "video/mp4";
}

}  // namespace

std::string Request::header(std::string_view name) const {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto it = headers.find(key);
  return it == headers.end() ? std::string() : it->second;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
               std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      out.push_back(static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::pair<std::string, std::map<std::string, std::string>> split_target(std::string_view target) {
  auto q = target.find('?');
  std::pair<std::string, std::map<std::string, std::string>> out;
  out.first = percent_decode(target.substr(0, q));
  if (q == std::string_view::npos) return out;
  std::string_view query = target.substr(q + 1);
  while (!query.empty()) {
    auto amp = query.find('&');
    auto item = query.substr(0, amp);
    auto eq = item.find('=');
    if (!item.empty()) {
      out.second.emplace(percent_decode(item.substr(0, eq)),
                         eq == std::string_view::npos ? "" : percent_decode(item.substr(eq + 1)));
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return out;
}

Response json_response(int status, const std::string& body) {
  Response r;
  r.status = status;
  r.body = body;
  return r;
}

Response error_response(int status, std::string_view message) {
  return json_response(status, json{{"error", message}}.dump());
}

const std::vector<Route>& Api::routes() {
  static const std::vector<Route> table = {
      {"POST", "/api/signup", false},
      {"POST", "/api/login", false},
      {"POST", "/api/logout", true},
      {"GET", "/api/session", true},
      {"POST", "/api/translate", true},
      {"POST", "/api/recognize", true},
      {"GET", "/api/lexicon", true},
      {"POST", "/api/lexicon", true},
      {"GET", "/api/assets/{id}", true},
  };
  return table;
}

Api::Api(ServiceConfig config)
    : config_(std::move(config)),
      nlp_(nlp::NlpResources::load(nlp::NlpDataPaths::in_directory(config_.nlp_dir))),
      lexicon_(config_.lexicon_manifest) {
  if (config_.assets_dir.empty()) {
    config_.assets_dir = config_.lexicon_manifest.parent_path() / "assets";
  }
  fs::create_directories(config_.assets_dir);
  fs::create_directories(config_.data_dir);
  accounts_ = std::make_unique<AccountStore>(config_.data_dir / "accounts.db", config_.auth);
  if (config_.model_path) {
    model_ = std::make_shared<const recognizer::MlpModel>(recognizer::load_model(*config_.model_path));
  }
  // Fails fast on a broken manifest.
  lexicon_.snapshot();
}

std::optional<SessionInfo> Api::authenticate(const Request& request) {
  return accounts_->session(request_token(request));
}

Response Api::handle(const Request& request) {
  if (request.method == "OPTIONS" && !config_.cors_origin.empty()) {
    Response r;
    r.status = 204;
    r.content_type.clear();
    return r;
  }
  if (request.path == "/healthz" && request.method == "GET") return health();

  const Route* route = nullptr;
  bool path_known = false;
  std::string param;
  for (const auto& candidate : routes()) {
    if (!segment_match(candidate.pattern, request.path, &param)) continue;
    path_known = true;
    if (candidate.method == request.method) {
      route = &candidate;
      break;
    }
  }
  if (!route) {
    if (path_known) return error_response(405, "method not allowed");
    return error_response(404, "not found");
  }

  std::optional<SessionInfo> session;
  if (route->requires_session) {
    session = authenticate(request);
    if (!session) return error_response(401, "authentication required");
  }

  try {
    const auto& p = route->pattern;
    if (p == "/api/signup") return signup(request);
    if (p == "/api/login") return login(request);
    if (p == "/api/logout") return logout(request);
    if (p == "/api/session") return session_info(*session);
    if (p == "/api/translate") return translate(request);
    if (p == "/api/recognize") return recognize(request);
    if (p == "/api/lexicon") return request.method == "GET" ? list_lexicon() : add_lexicon(request);
    return asset(param);
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

Response Api::health() {
  auto view = lexicon_.snapshot();
  return json_response(200, json{{"status", "ok"},
                                  {"lexicon_version", view.version()},
                                  {"model_loaded", model_ != nullptr}}
                                .dump());
}

Response Api::signup(const Request& r) {
  auto doc = parse_json_object(r.body);
  if (!doc || !doc->contains("username") || !doc->contains("password") ||
      !(*doc)["username"].is_string() || !(*doc)["password"].is_string()) {
    return error_response(400, "expected {\"username\": string, \"password\": string}");
  }
  try {
    accounts_->create_account((*doc)["username"].get<std::string>(),
                              (*doc)["password"].get<std::string>());
  } catch (const PolicyViolation& e) {
    return error_response(400, e.what());
  } catch (const DuplicateUser& e) {
    return error_response(409, e.what());
  }
  return json_response(201, json{{"username", (*doc)["username"]}}.dump());
}

Response Api::login(const Request& r) {
  auto doc = parse_json_object(r.body);
  if (!doc || !doc->contains("username") || !doc->contains("password") ||
      !(*doc)["username"].is_string() || !(*doc)["password"].is_string()) {
    return error_response(400, "expected {\"username\": string, \"password\": string}");
  }
  auto result = accounts_->login((*doc)["username"].get<std::string>(),
                                 (*doc)["password"].get<std::string>());
  if (!result) return json_response(401, kBadCredentials);
  return json_response(200, json{{"token", result->first},
                                 {"username", result->second.username},
                                 {"expires_at", result->second.expires_at_ms}}
                                .dump());
}

Response Api::logout(const Request& r) {
  accounts_->logout(request_token(r));
  Response resp;
  resp.status = 204;
  resp.content_type.clear();
  return resp;
}

Response Api::session_info(const SessionInfo& s) {
  return json_response(200, json{{"username", s.username}, {"expires_at", s.expires_at_ms}}.dump());
}

Response Api::translate(const Request& r) {
  auto doc = parse_json_object(r.body);
  if (!doc || !doc->contains("text") || !(*doc)["text"].is_string()) {
    return error_response(400, "expected {\"text\": string}");
  }
  const auto text = (*doc)["text"].get<std::string>();
  if (code_points(text) > kMaxTextLength) {
    return error_response(413, "text exceeds 1000 characters");
  }
  if (nlp::tokenize(nlp::normalize_text(text, nlp_.contractions)).empty()) {
    return error_response(422, "empty input");
  }
  auto view = lexicon_.snapshot();
  auto manifest = gloss::translate(text, nlp_, view);
  return json_response(200, gloss::to_json(manifest).dump());
}

Response Api::recognize(const Request& r) {
  if (!model_) return error_response(503, "no recognition model loaded");
  auto doc = parse_json_object(r.body);
  if (!doc || !doc->contains("frames") || !(*doc)["frames"].is_array()) {
    return error_response(400, "expected {\"frames\": [LandmarkFrame]}");
  }
  const auto& frames = (*doc)["frames"];
  if (frames.empty()) return error_response(422, "empty frame list");
  if (frames.size() > kMaxBatchFrames) {
    return error_response(413, "at most 100 frames per request");
  }
  std::vector<recognizer::Prediction> predictions;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    try {
      predictions.push_back(recognizer::predict(*model_, recognizer::frame_from_json(frames[i])));
    } catch (const recognizer::InvalidFrame& e) {
      return json_response(422, json{{"error", "invalid frame"},
                                     {"frame", i},
                                     {"detail", e.what()}}
                                    .dump());
    }
  }
  auto vote = recognizer::majority_vote(predictions);
  return json_response(200, json{{"label", vote.label},
                                 {"confidence", vote.confidence},
                                 {"frames", predictions.size()}}
                                .dump());
}

Response Api::list_lexicon() {
  auto view = lexicon_.snapshot();
  json entries = json::array();
  for (const auto& e : view.entries()) {
    entries.push_back({{"gloss", e.gloss},
                       {"kind", lexicon::to_string(e.kind)},
                       {"asset_uri", std::string(gloss::kDefaultAssetUriPrefix) + lexicon::asset_id(e)},
                       {"added_at", e.added_at_ms}});
  }
  return json_response(200, json{{"version", view.version()}, {"entries", entries}}.dump());
}

Response Api::add_lexicon(const Request& r) {
  auto boundary = multipart_boundary(r.header("content-type"));
  if (!boundary) return error_response(400, "expected multipart/form-data");
  std::vector<FormPart> parts;
  try {
    parts = parse_multipart(r.body, *boundary);
  } catch (const MultipartError& e) {
    return error_response(400, e.what());
  }
  const auto* gloss_part = find_part(parts, "gloss");
  const auto* asset_part = find_part(parts, "asset");
  const auto* kind_part = find_part(parts, "kind");
  if (!gloss_part || !asset_part) return error_response(400, "fields gloss and asset are required");

  auto kind = lexicon::EntryKind::Word;
  if (kind_part) {
    auto parsed = lexicon::parse_entry_kind(kind_part->data);
    if (!parsed) return error_response(400, "unknown kind " + std::string(kind_part->data));
    kind = *parsed;
  }
  std::string gloss;
  try {
    gloss = lexicon::normalize_gloss(gloss_part->data, kind);
    if (kind == lexicon::EntryKind::Word) {
      // Store the keyword form translation will look up ("thanks" -> "thank").
      auto keywords = nlp::extract_keywords(gloss, nlp_).keywords;
      if (keywords.size() != 1) return error_response(400, "gloss is not a content word: " + gloss);
      gloss = keywords.front();
    }
  } catch (const lexicon::InvalidEntry& e) {
    return error_response(400, e.what());
  }
  if (asset_part->data.size() > kMaxUploadBytes) return error_response(413, "upload exceeds 50 MB");
  auto container = lexicon::sniff_video_container(asset_part->data);
  if (!container) return error_response(415, "asset is not an MP4 or WebM video");

  // One upload at a time: two adds of the same gloss would share a file name.
  std::lock_guard lock(upload_mutex_);
  if (lexicon_.snapshot().find(gloss, kind)) return error_response(409, "gloss already registered");

  const auto id = lexicon::asset_id(kind, gloss);
  const auto target = config_.assets_dir / (id + "." + *container);
  lexicon::detail::write_file_atomic(target, asset_part->data);
  const auto manifest_dir = config_.lexicon_manifest.parent_path();
  auto rel = target.lexically_proximate(manifest_dir.empty() ? fs::path(".") : manifest_dir);
  const auto stored = rel.empty() || *rel.begin() == ".." ? fs::absolute(target) : rel;
  std::uint64_t version = 0;
  try {
    version = lexicon_.add_entry(gloss, kind, stored.generic_string());
  } catch (const lexicon::DuplicateGloss& e) {
    return error_response(409, e.what());
  }
  return json_response(201, json{{"gloss", gloss},
                                 {"kind", lexicon::to_string(kind)},
                                 {"asset_uri", std::string(gloss::kDefaultAssetUriPrefix) + id},
                                 {"version", version}}
                                .dump());
}

Response Api::asset(std::string_view id) {
  auto view = lexicon_.snapshot();
  const auto* entry = view.find_by_asset_id(id);
  if (!entry) return error_response(404, "unknown asset id");
  const auto path = view.resolve(*entry);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return error_response(404, "asset file missing");
  Response r;
  r.body = read_file(path);
  r.content_type = video_mime(path, std::string_view(r.body).substr(0, 64));
  r.headers.emplace_back("Cache-Control", "no-cache");
  return r;
}

}  // namespace signbridge::service
