#include "signbridge/service/auth.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>
#include <sqlite3.h>

#include <array>
#include <charconv>
#include <vector>

namespace signbridge::service {

namespace {

constexpr std::size_t kSaltBytes = 16;
constexpr std::size_t kDigestBytes = 32;
constexpr std::string_view kScheme = "pbkdf2-sha256";

std::string to_hex(const unsigned char* data, std::size_t n) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xf]);
  }
  return out;
}

std::optional<std::vector<unsigned char>> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  std::vector<unsigned char> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [ptr, ec] = std::from_chars(hex.data() + 2 * i, hex.data() + 2 * i + 2, out[i], 16);
    if (ec != std::errc{} || ptr != hex.data() + 2 * i + 2) return std::nullopt;
  }
  return out;
}

void random_bytes(unsigned char* out, std::size_t n) {
  if (RAND_bytes(out, static_cast<int>(n)) != 1) throw AuthError("CSPRNG failure");
}

std::array<unsigned char, kDigestBytes> derive(std::string_view password,
                                               const unsigned char* salt, std::size_t salt_len,
                                               unsigned iterations) {
  std::array<unsigned char, kDigestBytes> key{};
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt,
                        static_cast<int>(salt_len), static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(key.size()), key.data()) != 1) {
    throw AuthError("key derivation failed");
  }
  return key;
}

std::string token_digest(std::string_view token) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(token.data(), token.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw AuthError("digest failed");
  }
  return to_hex(md, len);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Thin RAII wrapper around a prepared statement.
class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw AuthError(std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, std::string_view text) {
    sqlite3_bind_text(stmt_, i, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Statement& bind(int i, std::int64_t v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  // True while rows remain.
  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw AuthError(std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }
  int step_code() { return sqlite3_step(stmt_); }
  std::string text(int col) const {
    auto p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : "";
  }
  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

}  // namespace

std::string base64url(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                          reinterpret_cast<const unsigned char*>(bytes.data()),
                          static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  while (!out.empty() && out.back() == '=') out.pop_back();
  for (char& c : out) {
    if (c == '+') c = '-';
    else if (c == '/') c = '_';
  }
  return out;
}

std::string hash_password(std::string_view password, unsigned iterations) {
  std::array<unsigned char, kSaltBytes> salt{};
  random_bytes(salt.data(), salt.size());
  auto key = derive(password, salt.data(), salt.size(), iterations);
  return std::string(kScheme) + "$" + std::to_string(iterations) + "$" +
         to_hex(salt.data(), salt.size()) + "$" + to_hex(key.data(), key.size());
}

bool verify_password(std::string_view password, std::string_view encoded) {
  auto parts = split(encoded, '$');
  if (parts.size() != 4 || parts[0] != kScheme) return false;
  unsigned iterations = 0;
  auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), iterations);
  if (ec != std::errc{} || iterations == 0) return false;
  auto salt = from_hex(parts[2]);
  auto expected = from_hex(parts[3]);
  if (!salt || !expected || expected->size() != kDigestBytes) return false;
  auto key = derive(password, salt->data(), salt->size(), iterations);
  return CRYPTO_memcmp(key.data(), expected->data(), kDigestBytes) == 0;
}

std::string new_session_token() {
  std::array<unsigned char, 16> raw{};
  random_bytes(raw.data(), raw.size());
  return base64url(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

AccountStore::AccountStore(const std::filesystem::path& db_path, AuthConfig config)
    : config_(std::move(config)) {
  if (!config_.clock) {
    config_.clock = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  if (sqlite3_open(db_path.c_str(), &db_) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw AuthError("cannot open account store " + db_path.string() + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  exec("PRAGMA journal_mode=WAL");
  exec(
      "CREATE TABLE IF NOT EXISTS accounts ("
      " username TEXT PRIMARY KEY,"
      " credential TEXT NOT NULL,"
      " created_at INTEGER NOT NULL)");
  exec(
      "CREATE TABLE IF NOT EXISTS sessions ("
      " token_sha256 TEXT PRIMARY KEY,"
      " username TEXT NOT NULL REFERENCES accounts(username),"
      " expires_at INTEGER NOT NULL)");
  dummy_hash_ = hash_password("unused-dummy-password", config_.pbkdf2_iterations);
}

AccountStore::~AccountStore() { sqlite3_close(db_); }

void AccountStore::exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw AuthError(std::string("sqlite: ") + msg);
  }
}

std::int64_t AccountStore::now_ms() const { return config_.clock(); }

void AccountStore::create_account(std::string_view username, std::string_view password) {
  if (username.empty() || username.size() > kMaxUsernameLength) {
    throw PolicyViolation("username must be 1 to 64 characters");
  }
  for (unsigned char c : username) {
    if (c < 0x20 || c == 0x7f) throw PolicyViolation("username must not contain control characters");
  }
  if (password.size() < kMinPasswordLength) {
    throw PolicyViolation("password must be at least 8 characters");
  }
  const auto credential = hash_password(password, config_.pbkdf2_iterations);
  std::lock_guard lock(mutex_);
  Statement st(db_, "INSERT INTO accounts(username, credential, created_at) VALUES (?, ?, ?)");
  st.bind(1, username).bind(2, credential).bind(3, now_ms());
  int rc = st.step_code();
  if (rc == SQLITE_CONSTRAINT) throw DuplicateUser("username already taken");
  if (rc != SQLITE_DONE) throw AuthError(std::string("sqlite insert: ") + sqlite3_errmsg(db_));
}

std::optional<std::pair<std::string, SessionInfo>> AccountStore::login(std::string_view username,
                                                                       std::string_view password) {
  std::optional<std::string> credential;
  {
    std::lock_guard lock(mutex_);
    Statement st(db_, "SELECT credential FROM accounts WHERE username = ?");
    st.bind(1, username);
    if (st.step()) credential = st.text(0);
  }
  // Always derive once so both failure paths take the same time.
  const bool ok = verify_password(password, credential ? *credential : dummy_hash_);
  if (!credential || !ok) return std::nullopt;

  auto token = new_session_token();
  SessionInfo info{std::string(username),
                   now_ms() + std::chrono::duration_cast<std::chrono::milliseconds>(
                                  config_.session_lifetime)
                                  .count()};
  std::lock_guard lock(mutex_);
  Statement purge(db_, "DELETE FROM sessions WHERE expires_at <= ?");
  purge.bind(1, now_ms());
  purge.step();
  Statement st(db_, "INSERT INTO sessions(token_sha256, username, expires_at) VALUES (?, ?, ?)");
  st.bind(1, token_digest(token)).bind(2, username).bind(3, info.expires_at_ms);
  st.step();
  return std::make_pair(std::move(token), std::move(info));
}

std::optional<SessionInfo> AccountStore::session(std::string_view token) {
  if (token.empty()) return std::nullopt;
  const auto digest = token_digest(token);
  std::lock_guard lock(mutex_);
  Statement st(db_, "SELECT username, expires_at FROM sessions WHERE token_sha256 = ?");
  st.bind(1, digest);
  if (!st.step()) return std::nullopt;
  SessionInfo info{st.text(0), st.integer(1)};
  if (info.expires_at_ms <= now_ms()) return std::nullopt;
  return info;
}

void AccountStore::logout(std::string_view token) {
  const auto digest = token_digest(token);
  std::lock_guard lock(mutex_);
  Statement st(db_, "DELETE FROM sessions WHERE token_sha256 = ?");
  st.bind(1, digest);
  st.step();
}

}  // namespace signbridge::service
