#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "signbridge/error.hpp"

struct sqlite3;

namespace signbridge::service {

class AuthError : public Error {
 public:
  using Error::Error;
};

// Signup input fails the username or password policy.
class PolicyViolation : public AuthError {
 public:
  using AuthError::AuthError;
};

class DuplicateUser : public AuthError {
 public:
  using AuthError::AuthError;
};

inline constexpr std::size_t kMinPasswordLength = 8;
inline constexpr std::size_t kMaxUsernameLength = 64;
inline constexpr std::chrono::seconds kDefaultSessionLifetime{24 * 60 * 60};

/// Salted PBKDF2-HMAC-SHA256 digest, stored as
/// "pbkdf2-sha256$<iterations>$<salt b64url>$<digest b64url>".
std::string hash_password(std::string_view password, unsigned iterations);
bool verify_password(std::string_view password, std::string_view encoded);

/// 16 random bytes from the OpenSSL CSPRNG, base64url without padding.
std::string new_session_token();

std::string base64url(std::string_view bytes);

struct SessionInfo {
  std::string username;
  std::int64_t expires_at_ms = 0;
};

struct AuthConfig {
  unsigned pbkdf2_iterations = 100000;
  std::chrono::seconds session_lifetime = kDefaultSessionLifetime;
  // Milliseconds since the epoch; replaceable so tests can move time.
  std::function<std::int64_t()> clock;
};

/// Accounts and sessions in one SQLite file. Tokens are stored as SHA-256
/// digests, so a leaked database does not leak live sessions. All statements
/// run under one mutex; key derivation happens outside it.
class AccountStore {
 public:
  explicit AccountStore(const std::filesystem::path& db_path, AuthConfig config = {});
  ~AccountStore();

  AccountStore(const AccountStore&) = delete;
  AccountStore& operator=(const AccountStore&) = delete;

  /// Throws PolicyViolation or DuplicateUser.
  void create_account(std::string_view username, std::string_view password);

  /// New session on success. Unknown users cost the same key derivation as
  /// a wrong password.
  std::optional<std::pair<std::string, SessionInfo>> login(std::string_view username,
                                                           std::string_view password);

  /// Live session for the token, or nothing when unknown or expired.
  std::optional<SessionInfo> session(std::string_view token);

  void logout(std::string_view token);

  std::int64_t now_ms() const;

 private:
  void exec(const char* sql);

  AuthConfig config_;
  std::string dummy_hash_;
  std::mutex mutex_;
  sqlite3* db_ = nullptr;
};

}  // namespace signbridge::service
