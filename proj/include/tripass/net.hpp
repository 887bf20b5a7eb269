#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tripass/wire.hpp"

namespace tripass {

// Thin RAII TCP wrappers; loopback-grade, no TLS, TCP_NODELAY everywhere
// because the protocol is strict request/response.
class TcpConn {
 public:
  TcpConn() = default;
  explicit TcpConn(int fd);
  TcpConn(TcpConn&& other) noexcept;
  TcpConn& operator=(TcpConn&& other) noexcept;
  TcpConn(const TcpConn&) = delete;
  TcpConn& operator=(const TcpConn&) = delete;
  ~TcpConn();

  static TcpConn connect_to(const std::string& host, uint16_t port, int timeout_ms);

  bool valid() const { return fd_ >= 0; }
  void close();

  void send_all(std::span<const uint8_t> bytes);
  // Throws FramingError(kShortRead) on EOF, SessionAbortError on timeout.
  void recv_exact(std::span<uint8_t> bytes, int timeout_ms);

  void send_frame(const Frame& frame);
  Frame recv_frame(int timeout_ms);
  // Raw frame bytes (prefix included) with only length validation; lets a
  // transparent proxy relay without re-encoding.
  std::vector<uint8_t> recv_frame_bytes(int timeout_ms);

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  TcpListener(const std::string& host, uint16_t port);  // port 0: ephemeral
  TcpListener(TcpListener&&) noexcept;
  TcpListener& operator=(TcpListener&&) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  uint16_t port() const { return port_; }
  TcpConn accept_one(int timeout_ms);

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

}  // namespace tripass
