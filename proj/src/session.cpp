#include "tripass/session.hpp"

#include <algorithm>

#include "tripass/errors.hpp"

namespace tripass {

RunReport run_session(const SessionConfig& cfg, Channel& channel) {
  validate_config(cfg);

  const PhaseSet set(cfg.k);
  RngStream alice_rng(cfg.seeds.alice, "alice");
  RngStream bob_rng(cfg.seeds.bob, "bob");
  RngStream message_rng(cfg.seeds.message, "message");

  const Message msg = materialize_message(cfg, message_rng);
  const SessionId sid = derive_session_id(cfg);

  PartyState alice(Role::kAlice, cfg.variant, set, sid,
                   sample(set, alice_rng, cfg.n), cfg.secret);
  PartyState bob(Role::kBob, cfg.variant, set, sid,
                 sample(set, bob_rng, cfg.n), cfg.secret);

  RunReport report;
  echo_config(report, cfg);
  report.truth_bits = msg.bits;
  report.message_digest =
      msg.qubits.empty() ? digest_bits(msg.bits) : digest_states(msg.qubits);
  report.has_decode = true;

  std::vector<PureState> outputs;
  uint32_t completed = 0;
  try {
    for (uint32_t i = 1; i <= cfg.n; ++i) {
      PhotonMessage leg1 = channel.deliver(alice_prepare(alice, msg, i),
                                           Direction::kAliceToBob);
      PhotonMessage leg2 = channel.deliver(bob_pass1(bob, leg1),
                                           Direction::kBobToAlice);
      PhotonMessage leg3 = channel.deliver(alice_pass2(alice, leg2),
                                           Direction::kAliceToBob);
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

  if (const EveRecord* record = channel.record(); record != nullptr) {
    report.eve = summarize_eve(*record, msg, cfg.attack);
    EveRecord scored = *record;
    annotate_eve_record(scored, msg);
    for (const auto& entry : scored.positions) {
      report.eve_guess_bits.push_back(entry.guess_bit);
      if (entry.recovered_fidelity.has_value()) {
        report.eve_recovered_fidelities.push_back(*entry.recovered_fidelity);
      }
    }
  } else {
    report.eve.present = cfg.attack.kind != AttackKind::kNone;
    report.eve.kind = cfg.attack.kind;
  }
  return report;
}

RunReport run_session(const SessionConfig& cfg) {
  validate_config(cfg);
  auto channel = make_channel(cfg.attack, cfg.variant, PhaseSet(cfg.k),
                              cfg.attack.secret_known ? cfg.secret : std::nullopt);
  return run_session(cfg, *channel);
}

}  // namespace tripass
