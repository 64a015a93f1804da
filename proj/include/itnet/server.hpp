#pragma once

// Local socket server for the session protocol. Each connection gets its
// own Session. A connection either speaks length-prefixed frames (4-byte
// big-endian length, then that many bytes of JSON, both directions) or
// opens with an HTTP GET and upgrades to WebSocket text frames.

#include <atomic>
#include <cstdint>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace itnet {

class ServerError : public std::runtime_error {
 public:
  explicit ServerError(const std::string& what) : std::runtime_error(what) {}
};

class Server {
 public:
  // Binds 127.0.0.1:`port` (0 picks a free port). Throws ServerError.
  explicit Server(std::uint16_t port, std::string default_source = "");
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const { return port_; }

  // Accepts connections until stop(); returns after all of them ended.
  void run();
  // Safe from any thread. Closes the listener and every open connection.
  void stop();

 private:
  void serve_connection(int fd);

  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::string default_source_;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::set<int> clients_;
  std::vector<std::thread> threads_;
};

// Sec-WebSocket-Accept value for a client key.
std::string websocket_accept(const std::string& key);

}  // namespace itnet
