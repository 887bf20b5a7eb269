#include "tripass/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "tripass/errors.hpp"

namespace tripass {

namespace {

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

sockaddr_in make_addr(const std::string& host, uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw SessionAbortError(0, "invalid IPv4 address: " + host);
  }
  return addr;
}

void wait_readable(int fd, int timeout_ms) {
  pollfd pfd{fd, POLLIN, 0};
  const int rc = ::poll(&pfd, 1, timeout_ms);
  if (rc == 0) throw SessionAbortError(0, "timed out waiting for a frame");
  if (rc < 0) throw SessionAbortError(0, std::string("poll failed: ") + std::strerror(errno));
}

}  // namespace

TcpConn::TcpConn(int fd) : fd_(fd) {
  if (fd_ >= 0) set_nodelay(fd_);
}

TcpConn::TcpConn(TcpConn&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

TcpConn& TcpConn::operator=(TcpConn&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

TcpConn::~TcpConn() { close(); }

void TcpConn::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpConn TcpConn::connect_to(const std::string& host, uint16_t port, int timeout_ms) {
  (void)timeout_ms;
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw SessionAbortError(0, "cannot create socket");
  const sockaddr_in addr = make_addr(host, port);
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int err = errno;
    ::close(fd);
    throw SessionAbortError(0, "connect to " + host + ":" + std::to_string(port) +
                                   " failed: " + std::strerror(err));
  }
  return TcpConn(fd);
}

void TcpConn::send_all(std::span<const uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t rc = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (rc <= 0) {
      throw SessionAbortError(0, std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(rc);
  }
}

void TcpConn::recv_exact(std::span<uint8_t> bytes, int timeout_ms) {
  std::size_t got = 0;
  while (got < bytes.size()) {
    wait_readable(fd_, timeout_ms);
    const ssize_t rc = ::recv(fd_, bytes.data() + got, bytes.size() - got, 0);
    if (rc == 0) {
      throw FramingError(FramingError::Kind::kShortRead,
                         "connection closed mid-frame");
    }
    if (rc < 0) {
      throw SessionAbortError(0, std::string("recv failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(rc);
  }
}

void TcpConn::send_frame(const Frame& frame) { send_all(encode_frame(frame)); }

std::vector<uint8_t> TcpConn::recv_frame_bytes(int timeout_ms) {
  std::vector<uint8_t> bytes(4);
  recv_exact(std::span<uint8_t>(bytes.data(), 4), timeout_ms);
  const std::size_t total = peek_frame_size(bytes);
  bytes.resize(total);
  recv_exact(std::span<uint8_t>(bytes.data() + 4, total - 4), timeout_ms);
  return bytes;
}

Frame TcpConn::recv_frame(int timeout_ms) {
  return decode_frame(recv_frame_bytes(timeout_ms));
}

TcpListener::TcpListener(const std::string& host, uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw SessionAbortError(0, "cannot create listener socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = make_addr(host, port);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    throw SessionAbortError(0, "bind to " + host + ":" + std::to_string(port) +
                                   " failed: " + std::strerror(err));
  }
  if (::listen(fd_, 4) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    throw SessionAbortError(0, std::string("listen failed: ") + std::strerror(err));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(other.port_) {}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
    port_ = other.port_;
  }
  return *this;
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpConn TcpListener::accept_one(int timeout_ms) {
  wait_readable(fd_, timeout_ms);
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) {
    throw SessionAbortError(0, std::string("accept failed: ") + std::strerror(errno));
  }
  return TcpConn(fd);
}

}  // namespace tripass
