#include "tripass/netsim.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>

#include "tripass/errors.hpp"
#include "tripass/session.hpp"

namespace tripass {

namespace {

HelloFrame hello_for(const SessionConfig& cfg) {
  return HelloFrame{kProtocolVersion, static_cast<uint8_t>(cfg.variant),
                    static_cast<uint16_t>(cfg.k), cfg.n};
}

[[noreturn]] void abort_received(const AbortFrame& abort, uint32_t position) {
  char reason[8];
  std::snprintf(reason, sizeof(reason), "0x%02x", abort.reason);
  throw SessionAbortError(position,
                          std::string("peer aborted the session, reason ") + reason);
}

// Validates the peer's HELLO against ours; on mismatch sends ABORT with the
// appropriate reason and raises.
void check_hello(TcpConn& conn, const HelloFrame& theirs, const HelloFrame& ours) {
  if (theirs.version != ours.version) {
    conn.send_frame(AbortFrame{kAbortVersionMismatch});
    throw SessionAbortError(0, "HELLO version mismatch");
  }
  if (theirs.variant != ours.variant || theirs.k != ours.k || theirs.n != ours.n) {
    conn.send_frame(AbortFrame{kAbortParamMismatch});
    throw SessionAbortError(0, "HELLO parameter mismatch");
  }
}

PhotonMessage expect_photon(TcpConn& conn, int timeout_ms, uint32_t position) {
  const Frame frame = conn.recv_frame(timeout_ms);
  if (const auto* abort = std::get_if<AbortFrame>(&frame)) abort_received(*abort, position);
  if (const auto* photon = std::get_if<PhotonFrame>(&frame)) return photon->photon;
  throw SessionAbortError(position, "unexpected frame type, wanted PHOTON");
}

RunReport run_alice(const SessionConfig& cfg, TcpConn conn, int timeout_ms) {
  const PhaseSet set(cfg.k);
  RngStream alice_rng(cfg.seeds.alice, "alice");
  RngStream message_rng(cfg.seeds.message, "message");
  const Message msg = materialize_message(cfg, message_rng);
  const SessionId sid = derive_session_id(cfg);
  PartyState alice(Role::kAlice, cfg.variant, set, sid,
                   sample(set, alice_rng, cfg.n), cfg.secret);

  RunReport report;
  echo_config(report, cfg);
  report.truth_bits = msg.bits;
  report.message_digest =
      msg.qubits.empty() ? digest_bits(msg.bits) : digest_states(msg.qubits);
  report.has_decode = false;
  report.eve.present = false;

  conn.send_frame(hello_for(cfg));
  const Frame reply = conn.recv_frame(timeout_ms);
  if (const auto* abort = std::get_if<AbortFrame>(&reply)) abort_received(*abort, 0);
  if (const auto* hello = std::get_if<HelloFrame>(&reply)) {
    check_hello(conn, *hello, hello_for(cfg));
  } else {
    throw SessionAbortError(0, "unexpected frame type, wanted HELLO");
  }

  uint32_t completed = 0;
  try {
    for (uint32_t i = 1; i <= cfg.n; ++i) {
      conn.send_frame(PhotonFrame{alice_prepare(alice, msg, i)});
      const PhotonMessage back = expect_photon(conn, timeout_ms, completed);
      conn.send_frame(PhotonFrame{alice_pass2(alice, back)});
      report.photon_legs += 3;
      completed = i;
    }
  } catch (const SessionAbortError&) {
    throw;
  } catch (const std::exception& e) {
    throw SessionAbortError(completed, std::string("session aborted: ") + e.what());
  }
  report.positions = cfg.n;

  conn.send_frame(DoneFrame{});
  const Frame done = conn.recv_frame(timeout_ms);
  if (const auto* abort = std::get_if<AbortFrame>(&done)) abort_received(*abort, cfg.n);
  if (!std::holds_alternative<DoneFrame>(done)) {
    throw SessionAbortError(cfg.n, "unexpected frame type, wanted DONE");
  }
  return report;
}

RunReport run_bob(const SessionConfig& cfg, TcpConn conn, int timeout_ms) {
  const PhaseSet set(cfg.k);
  RngStream bob_rng(cfg.seeds.bob, "bob");
  RngStream message_rng(cfg.seeds.message, "message");
  const Message msg = materialize_message(cfg, message_rng);
  const SessionId sid = derive_session_id(cfg);
  PartyState bob(Role::kBob, cfg.variant, set, sid,
                 sample(set, bob_rng, cfg.n), cfg.secret);

  RunReport report;
  echo_config(report, cfg);
  report.truth_bits = msg.bits;
  report.message_digest =
      msg.qubits.empty() ? digest_bits(msg.bits) : digest_states(msg.qubits);
  report.has_decode = true;
  report.eve.present = false;

  const Frame first = conn.recv_frame(timeout_ms);
  if (const auto* abort = std::get_if<AbortFrame>(&first)) abort_received(*abort, 0);
  if (const auto* hello = std::get_if<HelloFrame>(&first)) {
    check_hello(conn, *hello, hello_for(cfg));
    conn.send_frame(hello_for(cfg));
  } else {
    throw SessionAbortError(0, "unexpected frame type, wanted HELLO");
  }

  std::vector<PureState> outputs;
  uint32_t completed = 0;
  try {
    for (uint32_t i = 1; i <= cfg.n; ++i) {
      const PhotonMessage leg1 = expect_photon(conn, timeout_ms, completed);
      conn.send_frame(PhotonFrame{bob_pass1(bob, leg1)});
      const PhotonMessage leg3 = expect_photon(conn, timeout_ms, completed);
      const BobOutput out = bob_finish(bob, leg3, bob_rng);
      report.photon_legs += 3;
      completed = i;

      if (out.bit.has_value()) report.decoded_bits.push_back(*out.bit);
      if (cfg.variant != Variant::kClassical) {
        outputs.push_back(out.state);
        report.output_states.push_back(out.state);
        report.output_fidelities.push_back(fidelity(msg.qubits[i - 1], out.state));
      }
    }
  } catch (const SessionAbortError&) {
    throw;
  } catch (const std::exception& e) {
    throw SessionAbortError(completed, std::string("session aborted: ") + e.what());
  }
  report.positions = cfg.n;

  if (cfg.variant == Variant::kClassical) {
    uint64_t errors = 0;
    for (uint32_t i = 0; i < cfg.n; ++i) {
      errors += (report.decoded_bits[i] != msg.bits[i]) ? 1 : 0;
    }
    report.bob_bit_error_rate = static_cast<double>(errors) / cfg.n;
    report.decoded_digest = digest_bits(report.decoded_bits);
  } else {
    double sum = 0.0, lo = 1.0;
    for (double f : report.output_fidelities) {
      sum += f;
      lo = std::min(lo, f);
    }
    report.mean_output_fidelity = sum / cfg.n;
    report.min_output_fidelity = lo;
    report.decoded_digest = digest_states(outputs);
  }

  const Frame done = conn.recv_frame(timeout_ms);
  if (const auto* abort = std::get_if<AbortFrame>(&done)) abort_received(*abort, cfg.n);
  if (!std::holds_alternative<DoneFrame>(done)) {
    throw SessionAbortError(cfg.n, "unexpected frame type, wanted DONE");
  }
  conn.send_frame(DoneFrame{});
  return report;
}

}  // namespace

RunReport run_peer_listening(const SessionConfig& cfg, TcpListener& listener,
                             int frame_timeout_ms) {
  validate_config(cfg);
  TcpConn conn = listener.accept_one(frame_timeout_ms);
  return run_bob(cfg, std::move(conn), frame_timeout_ms);
}

RunReport run_peer(Role role, const SessionConfig& cfg, const Endpoint& endpoint,
                   int frame_timeout_ms) {
  validate_config(cfg);
  if (role == Role::kBob) {
    TcpListener listener(endpoint.host, endpoint.port);
    return run_peer_listening(cfg, listener, frame_timeout_ms);
  }
  TcpConn conn = TcpConn::connect_to(endpoint.host, endpoint.port, frame_timeout_ms);
  return run_alice(cfg, std::move(conn), frame_timeout_ms);
}

EveRecord run_eve_proxy_listening(const ProxySpec& spec, TcpListener& listener,
                                  const Endpoint& upstream) {
  validate_attack_spec(spec.attack);
  const int timeout = spec.frame_timeout_ms;

  TcpConn alice_side = listener.accept_one(timeout);
  TcpConn bob_side;
  try {
    bob_side = TcpConn::connect_to(upstream.host, upstream.port, timeout);
  } catch (const SessionAbortError&) {
    alice_side.close();  // upstream unreachable: refuse and close
    throw;
  }

  const bool transparent = spec.attack.kind == AttackKind::kNone;

  // HELLO from Alice tells the adversary the variant and phase set.
  const std::vector<uint8_t> hello_bytes = alice_side.recv_frame_bytes(timeout);
  const Frame hello_frame = decode_frame(hello_bytes);
  const auto* hello = std::get_if<HelloFrame>(&hello_frame);
  if (hello == nullptr) {
    throw SessionAbortError(0, "proxy expected HELLO as the first frame");
  }
  bob_side.send_all(hello_bytes);

  std::unique_ptr<Channel> channel;
  EveRecord empty;
  if (!transparent) {
    channel = make_channel(spec.attack, static_cast<Variant>(hello->variant),
                           PhaseSet(hello->k), spec.secret);
  }

  const std::vector<uint8_t> hello_reply = bob_side.recv_frame_bytes(timeout);
  alice_side.send_all(hello_reply);
  if (std::holds_alternative<AbortFrame>(decode_frame(hello_reply))) {
    return channel ? *channel->record() : empty;
  }

  // Strict per-position turn order: A->B pass 1, B->A pass 2, A->B pass 3.
  auto relay = [&](TcpConn& from, TcpConn& to, Direction direction) -> bool {
    const std::vector<uint8_t> bytes = from.recv_frame_bytes(timeout);
    if (transparent) {
      to.send_all(bytes);
      return !std::holds_alternative<AbortFrame>(decode_frame(bytes));
    }
    const Frame frame = decode_frame(bytes);
    if (const auto* photon = std::get_if<PhotonFrame>(&frame)) {
      to.send_frame(PhotonFrame{channel->deliver(photon->photon, direction)});
      return true;
    }
    to.send_all(bytes);  // HELLO/DONE/ABORT pass through unmodified
    return !std::holds_alternative<AbortFrame>(frame);
  };

  for (uint32_t i = 1; i <= hello->n; ++i) {
    if (!relay(alice_side, bob_side, Direction::kAliceToBob)) break;
    if (!relay(bob_side, alice_side, Direction::kBobToAlice)) break;
    if (!relay(alice_side, bob_side, Direction::kAliceToBob)) break;
  }
  relay(alice_side, bob_side, Direction::kAliceToBob);  // DONE
  relay(bob_side, alice_side, Direction::kBobToAlice);  // DONE

  return channel ? *channel->record() : empty;
}

EveRecord run_eve_proxy(const ProxySpec& spec, const Endpoint& listen,
                        const Endpoint& upstream) {
  TcpListener listener(listen.host, listen.port);
  return run_eve_proxy_listening(spec, listener, upstream);
}

}  // namespace tripass
