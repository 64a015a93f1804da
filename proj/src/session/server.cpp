#include "itnet/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <sstream>

#include "itnet/session.hpp"

namespace itnet {

namespace {

constexpr std::size_t kMaxMessage = 64u << 20;
constexpr std::size_t kMaxHeader = 64u << 10;

class Connection {
 public:
  explicit Connection(int fd) : fd_(fd) {}

  // Ensures at least `n` bytes are buffered. False on EOF or error.
  bool fill(std::size_t n) {
    char chunk[4096];
    while (buf_.size() < n) {
      ssize_t got = ::recv(fd_, chunk, sizeof chunk, 0);
      if (got < 0 && errno == EINTR) continue;
      if (got <= 0) return false;
      buf_.append(chunk, static_cast<std::size_t>(got));
    }
    return true;
  }

  const std::string& buffered() const { return buf_; }

  bool read_exact(std::size_t n, std::string& out) {
    if (!fill(n)) return false;
    out = buf_.substr(0, n);
    buf_.erase(0, n);
    return true;
  }

  // Reads through the first occurrence of `delim`, at most `limit` bytes.
  bool read_until(const std::string& delim, std::size_t limit, std::string& out) {
    while (true) {
      auto pos = buf_.find(delim);
      if (pos != std::string::npos) {
        out = buf_.substr(0, pos + delim.size());
        buf_.erase(0, pos + delim.size());
        return true;
      }
      if (buf_.size() > limit || !fill(buf_.size() + 1)) return false;
    }
  }

  bool write_all(const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
      ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  }

 private:
  int fd_;
  std::string buf_;
};

std::string be32(std::uint32_t n) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>((n >> (24 - 8 * i)) & 0xff);
  return s;
}

void serve_framed(Connection& c, Session& session) {
  std::string header;
  std::string payload;
  while (c.read_exact(4, header)) {
    std::uint32_t len = 0;
    for (unsigned char ch : header) len = (len << 8) | ch;
    if (len > kMaxMessage) return;
    if (!c.read_exact(len, payload)) return;
    std::string reply = session.handle_text(payload);
    if (!c.write_all(be32(static_cast<std::uint32_t>(reply.size())) + reply)) return;
    if (session.closed()) return;
  }
}

// WebSocket (RFC 6455), server side.

enum Opcode : std::uint8_t { kCont = 0, kText = 1, kBinary = 2, kClose = 8, kPing = 9, kPong = 10 };

std::string ws_frame(std::uint8_t opcode, const std::string& payload) {
  std::string f;
  f.push_back(static_cast<char>(0x80 | opcode));
  std::size_t n = payload.size();
  if (n < 126) {
    f.push_back(static_cast<char>(n));
  } else if (n <= 0xffff) {
    f.push_back(126);
    f.push_back(static_cast<char>(n >> 8));
    f.push_back(static_cast<char>(n & 0xff));
  } else {
    f.push_back(127);
    for (int i = 7; i >= 0; --i) f.push_back(static_cast<char>((static_cast<std::uint64_t>(n) >> (8 * i)) & 0xff));
  }
  return f + payload;
}

struct WsFrame {
  bool fin = false;
  std::uint8_t opcode = 0;
  std::string payload;
};

bool read_ws_frame(Connection& c, WsFrame& out) {
  std::string h;
  if (!c.read_exact(2, h)) return false;
  auto b0 = static_cast<unsigned char>(h[0]);
  auto b1 = static_cast<unsigned char>(h[1]);
  out.fin = b0 & 0x80;
  out.opcode = b0 & 0x0f;
  if (!(b1 & 0x80)) return false;  // clients must mask
  std::uint64_t len = b1 & 0x7f;
  std::string ext;
  if (len == 126) {
    if (!c.read_exact(2, ext)) return false;
    len = (static_cast<unsigned char>(ext[0]) << 8) | static_cast<unsigned char>(ext[1]);
  } else if (len == 127) {
    if (!c.read_exact(8, ext)) return false;
    len = 0;
    for (unsigned char ch : ext) len = (len << 8) | ch;
  }
  if (len > kMaxMessage) return false;
  std::string mask;
  if (!c.read_exact(4, mask)) return false;
  if (!c.read_exact(static_cast<std::size_t>(len), out.payload)) return false;
  for (std::size_t i = 0; i < out.payload.size(); ++i) out.payload[i] ^= mask[i % 4];
  return true;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

void serve_websocket(Connection& c, Session& session) {
  std::string request;
  if (!c.read_until("\r\n\r\n", kMaxHeader, request)) return;
  std::istringstream lines(request);
  std::string line;
  std::getline(lines, line);
  std::string key;
  bool upgrade = false;
  while (std::getline(lines, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string name = lower(trim(line.substr(0, colon)));
    std::string value = trim(line.substr(colon + 1));
    if (name == "sec-websocket-key") key = value;
    if (name == "upgrade" && lower(value) == "websocket") upgrade = true;
  }
  if (!upgrade || key.empty()) {
    const std::string body = "this endpoint only speaks WebSocket\n";
    c.write_all("HTTP/1.1 426 Upgrade Required\r\nUpgrade: websocket\r\nConnection: close\r\n"
                "Content-Type: text/plain\r\nContent-Length: " +
                std::to_string(body.size()) + "\r\n\r\n" + body);
    return;
  }
  if (!c.write_all("HTTP/1.1 101 Switching Protocols\r\nUpgrade: websocket\r\n"
                   "Connection: Upgrade\r\nSec-WebSocket-Accept: " +
                   websocket_accept(key) + "\r\n\r\n"))
    return;

  std::string message;
  WsFrame f;
  while (read_ws_frame(c, f)) {
    switch (f.opcode) {
      case kPing:
        if (!c.write_all(ws_frame(kPong, f.payload))) return;
        continue;
      case kPong:
        continue;
      case kClose:
        c.write_all(ws_frame(kClose, f.payload.substr(0, 2)));
        return;
      case kText:
      case kBinary:
        message = f.payload;
        break;
      case kCont:
        message += f.payload;
        if (message.size() > kMaxMessage) return;
        break;
      default:
        return;
    }
    if (!f.fin) continue;
    if (!c.write_all(ws_frame(kText, session.handle_text(message)))) return;
    if (session.closed()) {
      c.write_all(ws_frame(kClose, std::string("\x03\xe8", 2)));
      return;
    }
  }
}

}  // namespace

std::string websocket_accept(const std::string& key) {
  std::string input = key + "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_Digest(input.data(), input.size(), digest, &digest_len, EVP_sha1(), nullptr);
  unsigned char out[4 * ((EVP_MAX_MD_SIZE + 2) / 3) + 1];
  int n = EVP_EncodeBlock(out, digest, static_cast<int>(digest_len));
  return std::string(reinterpret_cast<char*>(out), static_cast<std::size_t>(n));
}

Server::Server(std::uint16_t port, std::string default_source)
    : default_source_(std::move(default_source)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ServerError(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw ServerError("cannot listen on port " + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

Server::~Server() {
  stop();
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(mu_);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
  ::close(listen_fd_);
}

void Server::run() {
  while (!stopping_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR && !stopping_) continue;
      break;
    }
    std::lock_guard lock(mu_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    clients_.insert(fd);
    threads_.emplace_back([this, fd] {
      serve_connection(fd);
      std::lock_guard inner(mu_);
      clients_.erase(fd);
      ::close(fd);
    });
  }
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(mu_);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
}

void Server::stop() {
  stopping_ = true;
  ::shutdown(listen_fd_, SHUT_RDWR);
  std::lock_guard lock(mu_);
  for (int fd : clients_) ::shutdown(fd, SHUT_RDWR);
}

void Server::serve_connection(int fd) {
  Connection c(fd);
  Session session(default_source_);
  if (!c.fill(4)) return;
  if (c.buffered().compare(0, 4, "GET ") == 0)
    serve_websocket(c, session);
  else
    serve_framed(c, session);
}

}  // namespace itnet
