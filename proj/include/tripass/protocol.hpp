#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tripass/phases.hpp"
#include "tripass/statekit.hpp"

namespace tripass {

enum class Variant : uint8_t {
  kClassical = 1,      // bit message, decoded by measurement
  kQuantum = 2,        // arbitrary qubit message
  kAuthenticated = 3,  // qubit message blinded by pre-shared secret angles
};

const char* variant_name(Variant v);

using SessionId = std::array<uint8_t, 16>;

// One simulated photon in transit. Pass numbers per position run exactly
// 1 (A->B), 2 (B->A), 3 (A->B).
struct PhotonMessage {
  SessionId session_id{};
  uint32_t position = 0;  // 1-based
  uint8_t pass_no = 0;    // 1..3
  PureState state;
};

// Payload of a session. Classical sessions carry bits; quantum and
// authenticated sessions carry qubits. When the qubits are basis-encoded
// bits (|a*pi/2>), the source bits ride along as ground truth for scoring.
struct Message {
  std::vector<uint8_t> bits;
  std::vector<PureState> qubits;

  std::size_t size() const { return bits.empty() ? qubits.size() : bits.size(); }
};

enum class Direction : uint8_t { kAliceToBob, kBobToAlice };

class EveRecord;

// The quantum channel between the parties. Adversaries implement deliver();
// the honest channel returns its input unchanged.
class Channel {
 public:
  virtual ~Channel() = default;

  virtual PhotonMessage deliver(PhotonMessage photon, Direction direction) = 0;

  // Non-null when the channel hosts an eavesdropper.
  virtual const EveRecord* record() const { return nullptr; }
};

enum class Role : uint8_t { kAlice, kBob };

// Per-party protocol state: the local random angle indices, the optional
// pre-shared secret, and a cursor that enforces strict (position, pass)
// ordering.
class PartyState {
 public:
  PartyState(Role role, Variant variant, PhaseSet set, SessionId session_id,
             std::vector<PhaseIndex> local_indices,
             std::optional<SecretAngles> secret);

  Role role() const { return role_; }
  Variant variant() const { return variant_; }
  const PhaseSet& phase_set() const { return set_; }
  const SessionId& session_id() const { return session_id_; }
  const std::vector<PhaseIndex>& local_indices() const { return local_indices_; }

  uint32_t cursor_position() const { return cursor_position_; }
  uint8_t cursor_pass() const { return cursor_pass_; }

  double local_angle(uint32_t position) const;
  double secret_angle(uint32_t position) const;

  void expect(uint32_t position, uint8_t pass_no) const;
  void check_incoming(const PhotonMessage& photon) const;
  void advance();

 private:
  Role role_;
  Variant variant_;
  PhaseSet set_;
  SessionId session_id_;
  std::vector<PhaseIndex> local_indices_;
  std::optional<SecretAngles> secret_;
  uint32_t cursor_position_ = 1;
  uint8_t cursor_pass_ = 1;
};

// Step 2: Alice encodes position i and blinds it with her local angle
// (plus the shared secret angle in the authenticated variant).
PhotonMessage alice_prepare(PartyState& alice, const Message& msg, uint32_t position);

// Step 3: Bob adds his local angle and returns the photon.
PhotonMessage bob_pass1(PartyState& bob, const PhotonMessage& photon);

// Step 4: Alice removes her local angle and forwards the photon.
PhotonMessage alice_pass2(PartyState& alice, const PhotonMessage& photon);

struct BobOutput {
  std::optional<uint8_t> bit;  // classical variant only
  PureState state;             // final state (collapsed state for classical)
};

// Step 5: Bob removes his remaining angles and decodes. The classical
// variant measures in the {|H>,|V>} basis, drawing u from rng even though
// the pre-measurement state is deterministic.
BobOutput bob_finish(PartyState& bob, const PhotonMessage& photon, RngStream& rng);

}  // namespace tripass
