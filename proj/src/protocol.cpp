#include "tripass/protocol.hpp"

#include <string>

#include "tripass/errors.hpp"

namespace tripass {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kClassical: return "classical";
    case Variant::kQuantum: return "quantum";
    case Variant::kAuthenticated: return "auth";
  }
  return "unknown";
}

PartyState::PartyState(Role role, Variant variant, PhaseSet set,
                       SessionId session_id, std::vector<PhaseIndex> local_indices,
                       std::optional<SecretAngles> secret)
    : role_(role),
      variant_(variant),
      set_(set),
      session_id_(session_id),
      local_indices_(std::move(local_indices)),
      secret_(std::move(secret)) {
  if (local_indices_.empty()) {
    throw EmptyMessageError("party needs at least one local angle index");
  }
  if (variant_ == Variant::kAuthenticated) {
    if (!secret_.has_value()) {
      throw MissingSecretError("authenticated variant requires pre-shared secret angles");
    }
    if (secret_->indices.size() != local_indices_.size()) {
      throw MissingSecretError("secret angle count must equal message length");
    }
    if (secret_->k_count != set_.k_count()) {
      throw MissingSecretError("secret angles were derived from a different phase set");
    }
  }
}

double PartyState::local_angle(uint32_t position) const {
  return set_.angle_of(local_indices_.at(position - 1));
}

double PartyState::secret_angle(uint32_t position) const {
  if (!secret_.has_value()) return 0.0;
  return set_.angle_of(secret_->indices.at(position - 1));
}

void PartyState::expect(uint32_t position, uint8_t pass_no) const {
  if (position != cursor_position_ || pass_no != cursor_pass_) {
    throw ProtocolOrderError(
        "protocol order violation: expected position " +
        std::to_string(cursor_position_) + " pass " + std::to_string(cursor_pass_) +
        ", got position " + std::to_string(position) + " pass " +
        std::to_string(pass_no));
  }
}

void PartyState::check_incoming(const PhotonMessage& photon) const {
  if (photon.session_id != session_id_) {
    throw ProtocolOrderError("photon belongs to a different session");
  }
  expect(photon.position, photon.pass_no);
}

void PartyState::advance() {
  // Alice acts on passes 1 and 2 of each position, Bob on passes 1 and 3;
  // the cursor tracks the next photon event this party participates in.
  if (role_ == Role::kAlice) {
    if (cursor_pass_ == 1) {
      cursor_pass_ = 2;
    } else {
      cursor_pass_ = 1;
      ++cursor_position_;
    }
  } else {
    if (cursor_pass_ == 1) {
      cursor_pass_ = 3;
    } else {
      cursor_pass_ = 1;
      ++cursor_position_;
    }
  }
}

PhotonMessage alice_prepare(PartyState& alice, const Message& msg, uint32_t position) {
  if (alice.role() != Role::kAlice) throw ProtocolOrderError("alice_prepare needs the Alice party");
  alice.expect(position, 1);

  PureState payload;
  switch (alice.variant()) {
    case Variant::kClassical: {
      const uint8_t a = msg.bits.at(position - 1);
      payload = (a == 0) ? PureState{{1.0, 0.0}, {0.0, 0.0}}
                         : PureState{{0.0, 0.0}, {1.0, 0.0}};
      break;
    }
    case Variant::kQuantum:
    case Variant::kAuthenticated:
      payload = msg.qubits.at(position - 1);
      break;
  }

  // The authenticated variant applies secret + local angle as one rotation;
  // all splits are equivalent because the rotations commute.
  const double angle = alice.secret_angle(position) + alice.local_angle(position);
  PhotonMessage out{alice.session_id(), position, 1, rotate(payload, angle)};
  alice.advance();
  return out;
}

PhotonMessage bob_pass1(PartyState& bob, const PhotonMessage& photon) {
  if (bob.role() != Role::kBob) throw ProtocolOrderError("bob_pass1 needs the Bob party");
  bob.check_incoming(photon);

  PhotonMessage out{photon.session_id, photon.position, 2,
                    rotate(photon.state, bob.local_angle(photon.position))};
  bob.advance();
  return out;
}

PhotonMessage alice_pass2(PartyState& alice, const PhotonMessage& photon) {
  if (alice.role() != Role::kAlice) throw ProtocolOrderError("alice_pass2 needs the Alice party");
  alice.check_incoming(photon);

  PhotonMessage out{photon.session_id, photon.position, 3,
                    rotate(photon.state, -alice.local_angle(photon.position))};
  alice.advance();
  return out;
}

BobOutput bob_finish(PartyState& bob, const PhotonMessage& photon, RngStream& rng) {
  if (bob.role() != Role::kBob) throw ProtocolOrderError("bob_finish needs the Bob party");
  bob.check_incoming(photon);

  const uint32_t i = photon.position;
  BobOutput out;
  switch (bob.variant()) {
    case Variant::kClassical: {
      const PureState unblinded = rotate(photon.state, -bob.local_angle(i));
      const MeasureOutcome m = measure(unblinded, 0.0, rng.next_unit());
      out.bit = static_cast<uint8_t>(m.bit);
      out.state = m.collapsed;
      break;
    }
    case Variant::kQuantum:
      out.state = rotate(photon.state, -bob.local_angle(i));
      break;
    case Variant::kAuthenticated:
      out.state = rotate(photon.state, -(bob.local_angle(i) + bob.secret_angle(i)));
      break;
  }
  bob.advance();
  return out;
}

}  // namespace tripass
