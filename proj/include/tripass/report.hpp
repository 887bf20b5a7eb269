#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tripass/config.hpp"

namespace tripass {

struct EveSummary {
  bool present = false;
  AttackKind kind = AttackKind::kNone;
  std::optional<double> accuracy;                 // bit-guess hit rate
  std::optional<double> mean_recovered_fidelity;  // state-recovery quality
  uint64_t measurements = 0;
  uint64_t positions_recorded = 0;
  bool secret_known = false;
};

struct RunReport {
  // config echo
  Variant variant = Variant::kClassical;
  uint32_t k = 0;
  uint32_t n = 0;
  MessageSource message_source = MessageSource::kRandomBits;
  bool complex_amplitudes = false;
  SessionSeeds seeds;
  AttackSpec attack;
  bool secret_present = false;
  SessionId session_id{};

  std::string message_digest;  // digest of the true payload
  std::string decoded_digest;  // digest of Bob's decode (empty without decode data)
  bool has_decode = false;     // false for the Alice-side network peer

  std::optional<double> bob_bit_error_rate;
  std::optional<double> mean_output_fidelity;
  std::optional<double> min_output_fidelity;

  EveSummary eve;

  uint64_t positions = 0;
  uint64_t photon_legs = 0;
  std::optional<double> wall_clock_seconds;

  // In-memory detail for tests and CSV output; not part of the JSON report.
  std::vector<uint8_t> truth_bits;
  std::vector<uint8_t> decoded_bits;
  std::vector<PureState> output_states;
  std::vector<double> output_fidelities;
  std::vector<std::optional<uint8_t>> eve_guess_bits;
  std::vector<double> eve_recovered_fidelities;
};

// Deterministic JSON: identical configs yield byte-identical strings.
// wall_clock_seconds is emitted only when set.
std::string report_to_json(const RunReport& report);

std::string eve_record_to_json(const EveRecord& record, const AttackSpec& spec);

// Scores Eve's guesses against the truth, filling guess_correct and
// recovered_fidelity in place.
void annotate_eve_record(EveRecord& record, const Message& truth);
EveSummary summarize_eve(const EveRecord& record, const Message& truth, const AttackSpec& spec);

// FNV-1a digest helpers, rendered as "fnv1a64:<16 hex digits>".
std::string digest_bits(const std::vector<uint8_t>& bits);
std::string digest_states(const std::vector<PureState>& states);

// Fills the config-echo fields shared by every report producer.
void echo_config(RunReport& report, const SessionConfig& cfg);

// Rebuilds the eve section of a network run from the proxy's record so a
// loopback run can be compared field-for-field with the in-process session.
RunReport attach_eve_section(RunReport bob_report, const EveRecord& proxy_record,
                             const Message& truth, const AttackSpec& spec);

}  // namespace tripass
