#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tripass/report.hpp"

namespace tripass {

// Payload distribution an enumeration averages over. Bit payloads are the
// default (basis-encoded for the qubit variants); a non-empty state set takes
// uniform weights.
struct InputDistribution {
  double bit_zero_probability = 0.5;
  std::vector<PureState> states;

  bool bit_payloads() const { return states.empty(); }

  static InputDistribution uniform_bits() { return {}; }
  static InputDistribution bit_point(uint8_t a) {
    return InputDistribution{a == 0 ? 1.0 : 0.0, {}};
  }
  static InputDistribution state_set(std::vector<PureState> s) {
    return InputDistribution{0.5, std::move(s)};
  }
  static InputDistribution default_for(Variant v);
};

// A fixed probe set with real and complex members, used where an enumeration
// needs representative qubit payloads.
std::vector<PureState> canonical_probe_states();

// Testing hook: exact results must be independent of reduction order.
enum class EnumerationOrder : uint8_t { kForward, kReverse };

struct ExactResult {
  Variant variant = Variant::kClassical;
  uint32_t k = 0;
  AttackSpec attack;
  std::string input_descriptor;

  // Bit-guess hit rate; present when Eve produces bit guesses.
  std::optional<double> eve_accuracy;
  // Present for measured (classical) decodes.
  std::optional<double> bob_error_rate;
  // Receiver-side mean output fidelity; for the mitm attack this is Eve's
  // mean recovery fidelity, the quantity her interception achieves.
  double mean_output_fidelity = 1.0;
  // Lattice combinations times measurement-outcome branching.
  uint64_t term_count = 0;
};

std::string exact_result_to_json(const ExactResult& result);

// Sums Born-rule probabilities over every lattice combination of the honest
// protocol. Error is exactly 0 and fidelity exactly 1 up to accumulation.
ExactResult enumerate_honest(Variant variant, uint32_t k);
ExactResult enumerate_honest(Variant variant, uint32_t k, const InputDistribution& input,
                             EnumerationOrder order = EnumerationOrder::kForward);

// Exact leakage/error probabilities under an attack: enumerates lattice
// angles x lattice basis choices x measurement branches, weighting each
// branch by its Born probability. Continuous basis strategies are Monte
// Carlo only. Enumeration is guarded: K <= 64 and at most 3 free lattice
// angles.
ExactResult enumerate_attack(Variant variant, uint32_t k, const AttackSpec& spec,
                             const InputDistribution& input,
                             EnumerationOrder order = EnumerationOrder::kForward);

// Statistical cross-check of the enumerator: n independent positions through
// protocol + adversary with the given seeds. Bit payloads must be uniform.
RunReport monte_carlo(Variant variant, uint32_t k, const AttackSpec& spec, uint32_t n,
                      const SessionSeeds& seeds, const InputDistribution& input);

}  // namespace tripass
