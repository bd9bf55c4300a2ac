#pragma once

#include <atomic>
#include <list>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "signbridge/service/api.hpp"

namespace signbridge::service {

/// HTTP/1.1 plus the /ws/recognize WebSocket on one port, one thread per
/// connection. Each request is logged as a JSON line.
class Server {
 public:
  /// Binds immediately; port 0 picks a free port.
  Server(Api& api, const std::string& host, unsigned short port, std::ostream* log = nullptr);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;

  /// Accept loop on the calling thread until stop().
  void run();
  /// Accept loop on a background thread.
  void start();
  /// Closes the listener and every open connection, then joins.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace signbridge::service
