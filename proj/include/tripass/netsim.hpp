#pragma once

#include <optional>

#include "tripass/net.hpp"
#include "tripass/report.hpp"

namespace tripass {

struct Endpoint {
  std::string host = "127.0.0.1";
  uint16_t port = 0;
};

inline constexpr int kDefaultFrameTimeoutMs = 10000;

// Drives one session over a socket. Bob listens on the endpoint and accepts
// one connection; Alice dials it. HELLO negotiation must match both sides'
// configs or the session ABORTs. Bob's report carries the full decode
// statistics; Alice's carries the config echo and counters.
RunReport run_peer(Role role, const SessionConfig& cfg, const Endpoint& endpoint,
                   int frame_timeout_ms = kDefaultFrameTimeoutMs);

// Bob on a pre-bound listener (lets tests use ephemeral ports).
RunReport run_peer_listening(const SessionConfig& cfg, TcpListener& listener,
                             int frame_timeout_ms = kDefaultFrameTimeoutMs);

struct ProxySpec {
  AttackSpec attack;
  std::optional<SecretAngles> secret;  // mitm analysis mode only
  int frame_timeout_ms = kDefaultFrameTimeoutMs;
};

// Transparent adversarial proxy: accepts one Bob-bound connection, dials
// upstream, applies the configured adversary to PHOTON frames in both
// directions, and relays HELLO/DONE/ABORT untouched (the attacker controls
// the quantum channel only). With attack kind none every frame is relayed
// byte-identically.
EveRecord run_eve_proxy(const ProxySpec& spec, const Endpoint& listen,
                        const Endpoint& upstream);
EveRecord run_eve_proxy_listening(const ProxySpec& spec, TcpListener& listener,
                                  const Endpoint& upstream);

}  // namespace tripass
