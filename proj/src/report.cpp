#include "tripass/report.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "tripass/errors.hpp"
#include "tripass/rng.hpp"

namespace tripass {

namespace {

using Json = nlohmann::ordered_json;

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

uint64_t fnv1a64_bytes(const std::vector<uint8_t>& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void append_be_double(std::vector<uint8_t>& out, double d) {
  const uint64_t bits = std::bit_cast<uint64_t>(d);
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

Json attack_to_json(const AttackSpec& spec) {
  Json j;
  j["kind"] = attack_kind_name(spec.kind);
  if (spec.kind == AttackKind::kInterceptResend) {
    j["passes"] = spec.passes;
    j["basis_strategy"] = basis_strategy_name(spec.basis_strategy);
    if (spec.basis_strategy == BasisStrategy::kFixed) j["fixed_basis"] = spec.fixed_basis;
  }
  if (spec.kind != AttackKind::kNone) {
    j["eve_seed"] = spec.eve_seed;
    j["bit_guess"] = spec.bit_guess;
  }
  if (spec.kind == AttackKind::kMitm) j["secret_known"] = spec.secret_known;
  return j;
}

std::string session_id_hex(const SessionId& id) {
  std::string s;
  s.reserve(32);
  for (uint8_t b : id) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", b);
    s += buf;
  }
  return s;
}

}  // namespace

std::string digest_bits(const std::vector<uint8_t>& bits) {
  return "fnv1a64:" + hex64(fnv1a64_bytes(bits));
}

std::string digest_states(const std::vector<PureState>& states) {
  std::vector<uint8_t> bytes;
  bytes.reserve(states.size() * 32);
  for (const auto& s : states) {
    append_be_double(bytes, s.amp_h.real());
    append_be_double(bytes, s.amp_h.imag());
    append_be_double(bytes, s.amp_v.real());
    append_be_double(bytes, s.amp_v.imag());
  }
  return "fnv1a64:" + hex64(fnv1a64_bytes(bytes));
}

void echo_config(RunReport& report, const SessionConfig& cfg) {
  report.variant = cfg.variant;
  report.k = cfg.k;
  report.n = cfg.n;
  report.message_source = cfg.message_source;
  report.complex_amplitudes = cfg.complex_amplitudes;
  report.seeds = cfg.seeds;
  report.attack = cfg.attack;
  report.secret_present = cfg.secret.has_value();
  report.session_id = derive_session_id(cfg);
}

void annotate_eve_record(EveRecord& record, const Message& truth) {
  for (auto& entry : record.positions) {
    const std::size_t idx = entry.position - 1;
    if (entry.guess_bit.has_value() && idx < truth.bits.size()) {
      entry.guess_correct = (*entry.guess_bit == truth.bits[idx]);
    }
    if (entry.guess_state.has_value()) {
      const PureState* target = nullptr;
      if (idx < truth.qubits.size()) {
        target = &truth.qubits[idx];
      }
      static PureState bit_states[2] = {state_from_angle(0.0),
                                        state_from_angle(std::acos(0.0))};
      if (target == nullptr && idx < truth.bits.size()) {
        target = &bit_states[truth.bits[idx]];
      }
      if (target != nullptr) {
        entry.recovered_fidelity = fidelity(*target, *entry.guess_state);
      }
    }
  }
}

EveSummary summarize_eve(const EveRecord& record, const Message& truth,
                         const AttackSpec& spec) {
  EveRecord scored = record;
  annotate_eve_record(scored, truth);

  EveSummary s;
  s.present = spec.kind != AttackKind::kNone;
  s.kind = spec.kind;
  s.measurements = scored.measurements;
  s.positions_recorded = scored.positions.size();
  s.secret_known = scored.analysis_secret_known;

  uint64_t guesses = 0, hits = 0;
  uint64_t fidelities = 0;
  double fid_sum = 0.0;
  for (const auto& entry : scored.positions) {
    if (entry.guess_correct.has_value()) {
      ++guesses;
      hits += *entry.guess_correct ? 1 : 0;
    }
    if (entry.recovered_fidelity.has_value()) {
      ++fidelities;
      fid_sum += *entry.recovered_fidelity;
    }
  }
  if (guesses > 0) s.accuracy = static_cast<double>(hits) / static_cast<double>(guesses);
  if (fidelities > 0) s.mean_recovered_fidelity = fid_sum / static_cast<double>(fidelities);
  return s;
}

std::string report_to_json(const RunReport& report) {
  Json j;
  j["schema"] = 1;

  Json cfg;
  cfg["variant"] = variant_name(report.variant);
  cfg["k"] = report.k;
  cfg["n"] = report.n;
  cfg["message_source"] = message_source_name(report.message_source);
  cfg["complex_amplitudes"] = report.complex_amplitudes;
  cfg["seeds"] = Json{{"alice", report.seeds.alice},
                      {"bob", report.seeds.bob},
                      {"eve", report.seeds.eve},
                      {"message", report.seeds.message}};
  cfg["attack"] = attack_to_json(report.attack);
  cfg["secret_present"] = report.secret_present;
  cfg["session_id"] = session_id_hex(report.session_id);
  j["config"] = cfg;

  j["message_digest"] = report.message_digest;
  if (report.has_decode) {
    j["decoded_digest"] = report.decoded_digest;
    j["bob_bit_error_rate"] =
        report.bob_bit_error_rate ? Json(*report.bob_bit_error_rate) : Json(nullptr);
    j["mean_output_fidelity"] =
        report.mean_output_fidelity ? Json(*report.mean_output_fidelity) : Json(nullptr);
    j["min_output_fidelity"] =
        report.min_output_fidelity ? Json(*report.min_output_fidelity) : Json(nullptr);
  } else {
    j["decoded_digest"] = nullptr;
    j["bob_bit_error_rate"] = nullptr;
    j["mean_output_fidelity"] = nullptr;
    j["min_output_fidelity"] = nullptr;
  }

  if (report.eve.present) {
    Json e;
    e["kind"] = attack_kind_name(report.eve.kind);
    e["accuracy"] = report.eve.accuracy ? Json(*report.eve.accuracy) : Json(nullptr);
    e["mean_recovered_fidelity"] = report.eve.mean_recovered_fidelity
                                       ? Json(*report.eve.mean_recovered_fidelity)
                                       : Json(nullptr);
    e["measurements"] = report.eve.measurements;
    e["positions_recorded"] = report.eve.positions_recorded;
    e["secret_known"] = report.eve.secret_known;
    j["eve"] = e;
  } else {
    j["eve"] = nullptr;
  }

  j["counters"] = Json{{"positions", report.positions}, {"photon_legs", report.photon_legs}};
  if (report.wall_clock_seconds.has_value()) {
    j["wall_clock_seconds"] = *report.wall_clock_seconds;
  }
  return j.dump(2) + "\n";
}

std::string eve_record_to_json(const EveRecord& record, const AttackSpec& spec) {
  Json j;
  j["schema"] = 1;
  j["attack"] = attack_to_json(spec);
  j["measurements"] = record.measurements;
  j["rng_draws"] = record.rng_draws;
  j["secret_known"] = record.analysis_secret_known;

  Json positions = Json::array();
  for (const auto& entry : record.positions) {
    Json p;
    p["position"] = entry.position;
    Json obs = Json::array();
    for (const auto& o : entry.observations) {
      obs.push_back(Json{{"pass", o.pass_no},
                         {"basis", o.basis},
                         {"outcome", o.outcome},
                         {"provenance", o.provenance == Provenance::kMeasurement
                                            ? "measurement"
                                            : "held_photon"}});
    }
    p["observations"] = obs;
    p["guess_bit"] = entry.guess_bit ? Json(*entry.guess_bit) : Json(nullptr);
    if (entry.guess_state.has_value()) {
      p["guess_state"] = Json{{"h_re", entry.guess_state->amp_h.real()},
                              {"h_im", entry.guess_state->amp_h.imag()},
                              {"v_re", entry.guess_state->amp_v.real()},
                              {"v_im", entry.guess_state->amp_v.imag()}};
      p["guess_provenance"] = entry.guess_provenance == Provenance::kHeldPhoton
                                  ? "held_photon"
                                  : (entry.guess_provenance == Provenance::kMeasurement
                                         ? "measurement"
                                         : "derived_guess");
    } else {
      p["guess_state"] = nullptr;
    }
    positions.push_back(p);
  }
  j["positions"] = positions;
  return j.dump(2) + "\n";
}

RunReport attach_eve_section(RunReport bob_report, const EveRecord& proxy_record,
                             const Message& truth, const AttackSpec& spec) {
  bob_report.eve = summarize_eve(proxy_record, truth, spec);
  bob_report.eve_guess_bits.clear();
  bob_report.eve_recovered_fidelities.clear();
  EveRecord scored = proxy_record;
  annotate_eve_record(scored, truth);
  for (const auto& entry : scored.positions) {
    bob_report.eve_guess_bits.push_back(entry.guess_bit);
    if (entry.recovered_fidelity.has_value()) {
      bob_report.eve_recovered_fidelities.push_back(*entry.recovered_fidelity);
    }
  }
  return bob_report;
}

}  // namespace tripass
