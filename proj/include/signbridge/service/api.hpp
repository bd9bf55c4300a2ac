#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signbridge/lexicon/lexicon.hpp"
#include "signbridge/nlp/resources.hpp"
#include "signbridge/recognizer/mlp.hpp"
#include "signbridge/service/auth.hpp"

namespace signbridge::service {

inline constexpr std::size_t kMaxTextLength = 1000;  // code points
inline constexpr std::size_t kMaxBatchFrames = 100;
inline constexpr std::size_t kMaxUploadBytes = 50u * 1024 * 1024;
// Room for multipart framing around a maximal upload.
inline constexpr std::size_t kMaxRequestBody = kMaxUploadBytes + 64 * 1024;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  unsigned short port = 8080;
  std::filesystem::path lexicon_manifest;
  // Uploaded clips land here; defaults to <manifest dir>/assets.
  std::filesystem::path assets_dir;
  std::optional<std::filesystem::path> model_path;
  // Holds accounts.db.
  std::filesystem::path data_dir;
  std::filesystem::path nlp_dir;
  // Access-Control-Allow-Origin value; empty disables CORS headers.
  std::string cors_origin;
  AuthConfig auth;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  // Header names lowercased.
  std::map<std::string, std::string> headers;
  std::string body;

  std::string header(std::string_view name) const;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

/// Splits "/a/b?x=1&y=%20" into its path and decoded query parameters.
std::pair<std::string, std::map<std::string, std::string>> split_target(std::string_view target);
std::string percent_decode(std::string_view s);

struct Route {
  std::string method;
  // "{id}" matches one path segment.
  std::string pattern;
  bool requires_session = true;
};

/// The HTTP API without transport. Thread-safe.
class Api {
 public:
  explicit Api(ServiceConfig config);

  Response handle(const Request& request);

  static const std::vector<Route>& routes();

  /// Session from "Authorization: Bearer <token>" or ?access_token=<token>.
  std::optional<SessionInfo> authenticate(const Request& request);

  /// Null when the service runs without a model.
  std::shared_ptr<const recognizer::MlpModel> model() const { return model_; }
  AccountStore& accounts() { return *accounts_; }
  lexicon::LexiconStore& lexicon() { return lexicon_; }
  const ServiceConfig& config() const { return config_; }

 private:
  Response signup(const Request& r);
  Response login(const Request& r);
  Response logout(const Request& r);
  Response session_info(const SessionInfo& s);
  Response translate(const Request& r);
  Response recognize(const Request& r);
  Response list_lexicon();
  Response add_lexicon(const Request& r);
  Response asset(std::string_view id);
  Response health();

  ServiceConfig config_;
  nlp::NlpResources nlp_;
  lexicon::LexiconStore lexicon_;
  std::unique_ptr<AccountStore> accounts_;
  std::shared_ptr<const recognizer::MlpModel> model_;
  std::mutex upload_mutex_;
};

Response json_response(int status, const std::string& body);
Response error_response(int status, std::string_view message);

}  // namespace signbridge::service
