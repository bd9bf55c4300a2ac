#include "signbridge/service/server.hpp"

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "signbridge/recognizer/classifier.hpp"
#include "signbridge/recognizer/smoother.hpp"

namespace signbridge::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms
      << 'Z';
  return out.str();
}

Request to_request(const http::request<http::string_body>& req) {
  Request r;
  r.method = std::string(req.method_string());
  auto [path, query] = split_target(std::string_view(req.target().data(), req.target().size()));
  r.path = std::move(path);
  r.query = std::move(query);
  for (const auto& field : req) {
    std::string name(field.name_string());
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    r.headers[name] = std::string(field.value());
  }
  r.body = req.body();
  return r;
}

http::response<http::string_body> to_response(Response&& resp, unsigned version, bool keep_alive,
                                              const std::string& cors_origin) {
  http::response<http::string_body> res{static_cast<http::status>(resp.status), version};
  res.set(http::field::server, "signbridge");
  if (!resp.content_type.empty()) res.set(http::field::content_type, resp.content_type);
  for (auto& [k, v] : resp.headers) res.set(k, v);
  if (!cors_origin.empty()) {
    res.set(http::field::access_control_allow_origin, cors_origin);
    res.set(http::field::access_control_allow_headers, "Authorization, Content-Type");
    res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
  }
  res.body() = std::move(resp.body);
  res.keep_alive(keep_alive);
  res.prepare_payload();
  return res;
}

}  // namespace

struct Server::Impl {
  struct Connection {
    std::shared_ptr<tcp::socket> socket;
    std::thread thread;
    std::atomic<bool> done{false};
    // Guards closing the socket against a concurrent stop().
    std::mutex close_mutex;
    bool closed = false;

    void close() {
      std::lock_guard lock(close_mutex);
      if (closed) return;
      beast::error_code ec;
      socket->close(ec);
      closed = true;
    }
    void interrupt() {
      std::lock_guard lock(close_mutex);
      if (!closed) ::shutdown(socket->native_handle(), SHUT_RDWR);
    }
  };

  Api& api;
  std::ostream* log;
  std::mutex log_mutex;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  std::thread accept_thread;
  std::mutex conn_mutex;
  std::list<std::unique_ptr<Connection>> connections;

  Impl(Api& a, std::ostream* l) : api(a), log(l) {}

  void log_line(const json& entry) {
    if (!log) return;
    std::lock_guard lock(log_mutex);
    *log << entry.dump() << '\n' << std::flush;
  }

  void log_request(std::string_view method, const std::string& path, int status,
                   std::chrono::steady_clock::time_point start, std::size_t bytes) {
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    log_line({{"ts", utc_timestamp()},
              {"method", method},
              {"path", path},
              {"status", status},
              {"bytes", bytes},
              {"duration_ms", std::round(elapsed.count() * 1000.0) / 1000.0}});
  }

  void reap_finished() {
    std::lock_guard lock(conn_mutex);
    for (auto it = connections.begin(); it != connections.end();) {
      if ((*it)->done) {
        (*it)->thread.join();
        it = connections.erase(it);
      } else {
        ++it;
      }
    }
  }

  void accept_loop() {
    while (!stopping) {
      auto socket = std::make_shared<tcp::socket>(io);
      beast::error_code ec;
      acceptor.accept(*socket, ec);
      if (stopping) break;
      if (ec) continue;
      reap_finished();
      auto conn = std::make_unique<Connection>();
      conn->socket = socket;
      auto* raw = conn.get();
      std::lock_guard lock(conn_mutex);
      conn->thread = std::thread([this, raw] {
        serve(*raw->socket);
        raw->close();
        raw->done = true;
      });
      connections.push_back(std::move(conn));
    }
  }

  void serve(tcp::socket& socket) {
    beast::error_code ec;
    beast::flat_buffer buffer;
    for (;;) {
      http::request_parser<http::string_body> parser;
      parser.body_limit(kMaxRequestBody);
      http::read(socket, buffer, parser, ec);
      const auto start = std::chrono::steady_clock::now();
      if (ec == http::error::body_limit) {
        auto res = to_response(error_response(413, "request body too large"), 11, false,
                               api.config().cors_origin);
        http::write(socket, res, ec);
        log_request("-", "-", 413, start, 0);
        break;
      }
      if (ec) break;
      auto req = parser.release();
      if (websocket::is_upgrade(req)) {
        serve_websocket(socket, std::move(req));
        return;
      }
      auto request = to_request(req);
      auto resp = api.handle(request);
      const int status = resp.status;
      auto res = to_response(std::move(resp), req.version(), req.keep_alive(), api.config().cors_origin);
      log_request(request.method, request.path, status, start, res.body().size());
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

  void reject_upgrade(tcp::socket& socket, const http::request<http::string_body>& req,
                      Response resp, const Request& request) {
    const auto start = std::chrono::steady_clock::now();
    const int status = resp.status;
    auto res = to_response(std::move(resp), req.version(), false, api.config().cors_origin);
    beast::error_code ec;
    http::write(socket, res, ec);
    log_request(request.method, request.path, status, start, res.body().size());
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

  // Protocol: one LandmarkFrame JSON object per text message in; one
  // {"label", "t"} message out per smoother transition. Bad frames get an
  // {"error"} reply and the stream continues.
  void serve_websocket(tcp::socket& socket, http::request<http::string_body> req) {
    const auto request = to_request(req);
    if (request.path != "/ws/recognize") {
      return reject_upgrade(socket, req, error_response(404, "not found"), request);
    }
    auto token_session = api.authenticate(request);
    if (!token_session) {
      return reject_upgrade(socket, req, error_response(401, "authentication required"), request);
    }
    auto model = api.model();
    if (!model) {
      return reject_upgrade(socket, req, error_response(503, "no recognition model loaded"), request);
    }

    const auto opened = std::chrono::steady_clock::now();
    websocket::stream<tcp::socket&> ws(socket);
    ws.read_message_max(1 << 20);
    beast::error_code ec;
    ws.accept(req, ec);
    if (ec) return;
    log_request("GET", request.path, 101, opened, 0);

    recognizer::StreamSmoother smoother;
    beast::flat_buffer buffer;
    for (;;) {
      buffer.clear();
      ws.read(buffer, ec);
      if (ec) break;
      if (!api.authenticate(request)) {
        ws.close(websocket::close_reason(websocket::close_code::policy_error, "session expired"), ec);
        break;
      }
      json reply;
      try {
        auto doc = json::parse(beast::buffers_to_string(buffer.data()));
        auto frame = recognizer::frame_from_json(doc);
        auto emitted = smoother.push(recognizer::predict(*model, frame));
        if (!emitted) continue;
        reply = {{"label", *emitted}, {"t", frame.timestamp_ms}};
      } catch (const json::exception& e) {
        reply = {{"error", std::string("malformed message: ") + e.what()}};
      } catch (const recognizer::InvalidFrame& e) {
        reply = {{"error", std::string("invalid frame: ") + e.what()}};
      }
      ws.text(true);
      ws.write(asio::buffer(reply.dump()), ec);
      if (ec) break;
    }
  }
};

Server::Server(Api& api, const std::string& host, unsigned short port, std::ostream* log)
    : impl_(std::make_unique<Impl>(api, log)) {
  tcp::endpoint endpoint{asio::ip::make_address(host), port};
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() { impl_->accept_loop(); }

void Server::start() {
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

void Server::stop() {
  if (impl_->stopping.exchange(true)) return;
  // A blocking accept() does not notice close(); shutdown() wakes it on Linux.
  ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  if (impl_->accept_thread.joinable()) impl_->accept_thread.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);
  std::lock_guard lock(impl_->conn_mutex);
  for (auto& conn : impl_->connections) conn->interrupt();
  for (auto& conn : impl_->connections) conn->thread.join();
  impl_->connections.clear();
}

}  // namespace signbridge::service
