#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tripass/adversary.hpp"
#include "tripass/protocol.hpp"

namespace tripass {

enum class MessageSource : uint8_t {
  kRandomBits,      // bits from the message stream (basis-encoded for qubit variants)
  kBitFile,         // bits supplied out-of-band (inline_bits)
  kRandomQubits,    // real angle states, or Haar states with complex_amplitudes
  kQubitAngleFile,  // real angle states supplied out-of-band (inline_angles)
  kStateSet,        // per position, uniform draw from inline_states
};

const char* message_source_name(MessageSource s);

struct SessionSeeds {
  uint64_t alice = 0;
  uint64_t bob = 0;
  uint64_t eve = 0;
  uint64_t message = 0;
};

struct SessionConfig {
  Variant variant = Variant::kClassical;
  uint32_t k = 8;
  uint32_t n = 1;
  MessageSource message_source = MessageSource::kRandomBits;
  bool complex_amplitudes = false;
  SessionSeeds seeds;
  AttackSpec attack;
  std::optional<SecretAngles> secret;
  std::vector<uint8_t> inline_bits;     // kBitFile payload
  std::vector<double> inline_angles;    // kQubitAngleFile payload (radians)
  std::vector<PureState> inline_states; // kStateSet pool
};

// Rejects every SessionConfig invariant violation with a distinct message.
void validate_config(const SessionConfig& cfg);

// 16 deterministic bytes tagging every photon of a session; both peers derive
// the same id from their (matching) configs.
SessionId derive_session_id(const SessionConfig& cfg);

// Builds the session payload, consuming the message stream in a pinned order
// (per position: one index draw for bits, one or two unit draws for qubits).
Message materialize_message(const SessionConfig& cfg, RngStream& message_rng);

// Secret-angle file: {"k": K, "indices": [...]}. Treat the file as secret
// material; keygen writes it with owner-only permissions.
SecretAngles load_secret_file(const std::string& path);
void save_secret_file(const SecretAngles& secret, const std::string& path);

}  // namespace tripass
