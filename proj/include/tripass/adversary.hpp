#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tripass/protocol.hpp"

namespace tripass {

enum class AttackKind : uint8_t { kNone, kInterceptResend, kMitm };
enum class BasisStrategy : uint8_t { kFixed, kUniformLattice, kUniformContinuous };

const char* attack_kind_name(AttackKind k);
const char* basis_strategy_name(BasisStrategy s);

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  std::vector<uint8_t> passes = {1};  // intercept_resend only, subset of {1,2,3}
  BasisStrategy basis_strategy = BasisStrategy::kFixed;
  double fixed_basis = 0.0;  // radians, used by kFixed
  uint64_t eve_seed = 0;
  // Produce bit guesses by measuring the recovered state in basis 0. Implied
  // for the classical variant; opt-in when qubit payloads are basis-encoded bits.
  bool bit_guess = false;
  bool secret_known = false;  // mitm analysis mode only
};

void validate_attack_spec(const AttackSpec& spec);

// How a recorded datum was obtained. Eve touches amplitudes only through
// statekit measure/rotate; the audit tests assert these tags.
enum class Provenance : uint8_t { kMeasurement, kHeldPhoton, kDerivedGuess };

struct InterceptObservation {
  uint8_t pass_no = 0;
  double basis = 0.0;  // radians
  uint8_t outcome = 0;
  Provenance provenance = Provenance::kMeasurement;
};

struct EvePositionRecord {
  uint32_t position = 0;
  std::vector<InterceptObservation> observations;
  std::optional<uint8_t> guess_bit;
  std::optional<PureState> guess_state;
  Provenance guess_provenance = Provenance::kHeldPhoton;
  // Scored against the truth after the fact; Eve herself never sees these.
  std::optional<bool> guess_correct;
  std::optional<double> recovered_fidelity;
};

// Everything the eavesdropper learned: a pure function of her RNG stream,
// her measurement outcomes, and the protocol's public structure.
class EveRecord {
 public:
  std::vector<EvePositionRecord> positions;
  uint64_t measurements = 0;
  uint64_t rng_draws = 0;
  bool analysis_secret_known = false;

  EvePositionRecord& at_position(uint32_t position);
};

// Honest baseline: deliver returns its input unchanged.
std::unique_ptr<Channel> identity_channel();

// Builds the configured adversary. The phase set feeds lattice basis
// strategies and the mitm angle draws; the secret is consulted only in
// mitm analysis mode (spec.secret_known).
std::unique_ptr<Channel> make_channel(const AttackSpec& spec, Variant variant,
                                      const PhaseSet& set,
                                      std::optional<SecretAngles> secret = std::nullopt);

// Maximum-likelihood bit guess from intercept observations, marginalized over
// the lattice angles Eve does not know (phi_A, phi_B, and phi_C for the
// authenticated variant), assuming uniform input bits. A single observation
// reduces to that observation's outcome bit; likelihood ties fall back to the
// first observation's outcome.
uint8_t ml_bit_guess(Variant variant, const PhaseSet& set,
                     std::span<const InterceptObservation> observations);

// The full decision table for a fixed (pass, basis) tuple, indexed by the
// packed outcome bits (observation j at bit j).
std::vector<uint8_t> ml_bit_guess_table(
    Variant variant, const PhaseSet& set,
    std::span<const std::pair<uint8_t, double>> pass_bases);

}  // namespace tripass
