#include "tripass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "branch_enum.hpp"
#include "tripass/errors.hpp"
#include "tripass/session.hpp"

namespace tripass {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kConservationTol = 1e-12;
constexpr uint32_t kMaxOracleK = 64;
constexpr std::size_t kMaxFreeAngles = 3;

// Compensated summation keeps exactness claims at 1e-12 independent of
// reduction order.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

struct Input {
  std::optional<uint8_t> bit;
  PureState state;
  double weight = 1.0;
};

std::vector<Input> build_inputs(Variant variant, const InputDistribution& dist) {
  std::vector<Input> inputs;
  if (dist.bit_payloads()) {
    const double p0 = dist.bit_zero_probability;
    if (p0 < 0.0 || p0 > 1.0) {
      throw ConfigError("bit_zero_probability must lie in [0,1]");
    }
    if (p0 > 0.0) inputs.push_back({uint8_t{0}, state_from_angle(0.0), p0});
    if (p0 < 1.0) inputs.push_back({uint8_t{1}, state_from_angle(kHalfPi), 1.0 - p0});
  } else {
    if (variant == Variant::kClassical) {
      throw ConfigError("the classical variant takes bit payloads only");
    }
    const double w = 1.0 / static_cast<double>(dist.states.size());
    for (const auto& s : dist.states) inputs.push_back({std::nullopt, s, w});
  }
  return inputs;
}

std::string describe_input(const InputDistribution& dist) {
  if (dist.bit_payloads()) {
    if (dist.bit_zero_probability == 0.5) return "uniform_bits";
    return "bits(p0=" + std::to_string(dist.bit_zero_probability) + ")";
  }
  return "state_set(" + std::to_string(dist.states.size()) + ")";
}

// Free lattice angle slots enumerated for a scenario.
enum class VarTag : uint8_t { kAlice, kBob, kSecret, kEveBasis };

struct LatticeVar {
  VarTag tag;
  uint8_t pass_no = 0;  // kEveBasis only
};

std::vector<LatticeVar> free_variables(Variant variant, const AttackSpec& spec) {
  std::vector<LatticeVar> vars;
  if (spec.kind == AttackKind::kMitm) {
    if (variant == Variant::kAuthenticated && !spec.secret_known) {
      vars.push_back({VarTag::kSecret});
    }
    return vars;
  }
  vars.push_back({VarTag::kAlice});
  vars.push_back({VarTag::kBob});
  if (variant == Variant::kAuthenticated) vars.push_back({VarTag::kSecret});
  if (spec.kind == AttackKind::kInterceptResend &&
      spec.basis_strategy == BasisStrategy::kUniformLattice) {
    for (uint8_t p : spec.passes) vars.push_back({VarTag::kEveBasis, p});
  }
  return vars;
}

uint64_t pow_u64(uint64_t base, std::size_t exp) {
  uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

struct Accumulators {
  KahanSum eve_hits;
  KahanSum bob_errors;
  KahanSum output_fidelity;
  bool eve_defined = false;
  bool bob_error_defined = false;
};

// One enumerated lattice combination of an intercept (or honest) scenario.
void evaluate_exchange_combo(Variant variant, const PhaseSet& set, const AttackSpec& spec,
                             const std::vector<Input>& inputs, double alice_angle,
                             double bob_angle, double secret_angle,
                             const detail::InterceptPlan& plan, double combo_weight,
                             std::map<std::size_t, std::vector<uint8_t>>* ml_tables,
                             Accumulators& acc) {
  const bool eve_guesses_bits = spec.kind == AttackKind::kInterceptResend &&
                                (variant == Variant::kClassical || spec.bit_guess);

  std::vector<std::pair<uint8_t, double>> pass_bases;
  for (uint8_t p = 1; p <= 3; ++p) {
    if (plan.basis_by_pass[p - 1]) pass_bases.emplace_back(p, *plan.basis_by_pass[p - 1]);
  }

  const std::vector<uint8_t>* table = nullptr;
  if (eve_guesses_bits && pass_bases.size() > 1) {
    // Decision tables depend only on the bases tuple; memoize across combos.
    std::size_t key = 0xcbf29ce484222325ULL;
    for (const auto& [pass_no, basis] : pass_bases) {
      uint64_t bits;
      std::memcpy(&bits, &basis, sizeof(bits));
      key = splitmix64(key ^ pass_no);
      key = splitmix64(key ^ bits);
    }
    auto it = ml_tables->find(key);
    if (it == ml_tables->end()) {
      it = ml_tables->emplace(key, ml_bit_guess_table(variant, set, pass_bases)).first;
    }
    table = &it->second;
  }

  for (const Input& input : inputs) {
    const auto leaves = detail::enumerate_branches(input.state, secret_angle,
                                                   alice_angle, bob_angle, plan);
    double conservation = 0.0;
    for (const auto& leaf : leaves) conservation += leaf.weight;
    if (std::abs(conservation - 1.0) > kConservationTol) {
      throw std::logic_error("outcome-branch probabilities do not sum to 1");
    }

    for (const auto& leaf : leaves) {
      const double w = combo_weight * input.weight * leaf.weight;
      if (w == 0.0) continue;

      if (variant == Variant::kClassical) {
        const PureState final_state = rotate(leaf.pre_finish, -bob_angle);
        const double p0 = fidelity(state_from_angle(0.0), final_state);
        const double p_correct = (*input.bit == 0) ? p0 : 1.0 - p0;
        acc.bob_errors.add(w * (1.0 - p_correct));
        acc.output_fidelity.add(w * p_correct);
        acc.bob_error_defined = true;
      } else {
        const double unwind = -bob_angle -
            (variant == Variant::kAuthenticated ? secret_angle : 0.0);
        const PureState final_state = rotate(leaf.pre_finish, unwind);
        acc.output_fidelity.add(w * fidelity(input.state, final_state));
      }

      if (eve_guesses_bits && !leaf.outcomes.empty()) {
        uint8_t guess;
        if (leaf.outcomes.size() == 1) {
          guess = leaf.outcomes.front();
        } else {
          std::size_t packed = 0;
          for (std::size_t j = 0; j < leaf.outcomes.size(); ++j) {
            packed |= static_cast<std::size_t>(leaf.outcomes[j]) << j;
          }
          guess = (*table)[packed];
        }
        acc.eve_hits.add(w * ((guess == *input.bit) ? 1.0 : 0.0));
        acc.eve_defined = true;
      }
    }
  }
}

// One enumerated secret-angle value of a mitm scenario. Angles that telescope
// out of Eve's view (phi_A, phi_B, and her own phi_E/phi_F) are not
// enumerated; their cancellation is exact by the commutation of rotations.
void evaluate_mitm_combo(Variant variant, const AttackSpec& spec,
                         const std::vector<Input>& inputs, double secret_angle,
                         double combo_weight, Accumulators& acc) {
  const bool bit_mode = variant == Variant::kClassical || spec.bit_guess;
  const bool secret_hidden = variant == Variant::kAuthenticated && !spec.secret_known;

  for (const Input& input : inputs) {
    const PureState recovered =
        secret_hidden ? rotate(input.state, secret_angle) : input.state;
    const double w = combo_weight * input.weight;

    // For mitm the headline fidelity is what Eve recovers.
    acc.output_fidelity.add(w * fidelity(input.state, recovered));

    if (bit_mode && input.bit.has_value()) {
      const double p0 = fidelity(state_from_angle(0.0), recovered);
      const double p_correct = (*input.bit == 0) ? p0 : 1.0 - p0;
      acc.eve_hits.add(w * p_correct);
      acc.eve_defined = true;

      if (variant == Variant::kClassical) {
        // Bob decodes Eve's re-encoded guess of an independent earlier
        // position (store-and-forward pipeline), so his bit is her guess of a
        // fresh draw from the same input distribution.
        for (const Input& prev : inputs) {
          const PureState prev_recovered =
              secret_hidden ? rotate(prev.state, secret_angle) : prev.state;
          const double q0 = fidelity(state_from_angle(0.0), prev_recovered);
          // P(Eve's guess g for prev | prev), then error when g != current bit.
          const double p_g0 = q0;
          const double err_given_prev =
              p_g0 * ((*input.bit == 0) ? 0.0 : 1.0) +
              (1.0 - p_g0) * ((*input.bit == 1) ? 0.0 : 1.0);
          acc.bob_errors.add(w * prev.weight * err_given_prev);
        }
        acc.bob_error_defined = true;
      }
    }
  }
}

}  // namespace

InputDistribution InputDistribution::default_for(Variant v) {
  if (v == Variant::kClassical) return uniform_bits();
  return state_set(canonical_probe_states());
}

std::vector<PureState> canonical_probe_states() {
  const double pi = std::numbers::pi;
  return {
      state_from_angle(0.0),
      state_from_angle(pi / 2.0),
      state_from_angle(pi / 5.0),
      PureState{Complex{std::numbers::sqrt2 / 2.0, 0.0},
                Complex{0.0, std::numbers::sqrt2 / 2.0}},
      PureState{Complex{0.6, 0.0}, std::polar(0.8, 0.9)},
  };
}

ExactResult enumerate_honest(Variant variant, uint32_t k) {
  return enumerate_honest(variant, k, InputDistribution::default_for(variant));
}

ExactResult enumerate_honest(Variant variant, uint32_t k, const InputDistribution& input,
                             EnumerationOrder order) {
  AttackSpec honest;
  honest.kind = AttackKind::kNone;
  return enumerate_attack(variant, k, honest, input, order);
}

ExactResult enumerate_attack(Variant variant, uint32_t k, const AttackSpec& spec,
                             const InputDistribution& input, EnumerationOrder order) {
  validate_attack_spec(spec);
  if (k < 2) throw ConfigError("k must be at least 2");
  if (k > kMaxOracleK) {
    throw EnumerationGuardError("oracle enumeration caps K at " +
                                std::to_string(kMaxOracleK));
  }
  if (spec.kind == AttackKind::kInterceptResend &&
      spec.basis_strategy == BasisStrategy::kUniformContinuous) {
    throw OracleUnsupportedError(
        "continuous basis strategies are Monte Carlo only; the oracle "
        "enumerates lattice strategies");
  }

  const PhaseSet set(k);
  const auto vars = free_variables(variant, spec);
  if (vars.size() > kMaxFreeAngles) {
    throw EnumerationGuardError(
        "scenario needs " + std::to_string(vars.size()) +
        " free lattice angles; the enumeration guard allows at most " +
        std::to_string(kMaxFreeAngles));
  }

  const auto inputs = build_inputs(variant, input);
  const uint64_t combos = pow_u64(k, vars.size());
  const double combo_weight = 1.0 / static_cast<double>(combos);

  Accumulators acc;
  std::map<std::size_t, std::vector<uint8_t>> ml_tables;

  std::vector<uint32_t> idx(vars.size(), 0);
  for (uint64_t combo = 0; combo < combos; ++combo) {
    uint64_t rest = combo;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const uint32_t raw = static_cast<uint32_t>(rest % k);
      idx[v] = (order == EnumerationOrder::kForward) ? raw : (k - 1 - raw);
      rest /= k;
    }

    double alice_angle = 0.0, bob_angle = 0.0, secret_angle = 0.0;
    detail::InterceptPlan plan;
    if (spec.kind == AttackKind::kInterceptResend) {
      for (uint8_t p : spec.passes) {
        if (spec.basis_strategy == BasisStrategy::kFixed) {
          plan.basis_by_pass[p - 1] = spec.fixed_basis;
        }
      }
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const double angle = set.angle_of(idx[v]);
      switch (vars[v].tag) {
        case VarTag::kAlice: alice_angle = angle; break;
        case VarTag::kBob: bob_angle = angle; break;
        case VarTag::kSecret: secret_angle = angle; break;
        case VarTag::kEveBasis: plan.basis_by_pass[vars[v].pass_no - 1] = angle; break;
      }
    }

    if (spec.kind == AttackKind::kMitm) {
      evaluate_mitm_combo(variant, spec, inputs, secret_angle, combo_weight, acc);
    } else {
      evaluate_exchange_combo(variant, set, spec, inputs, alice_angle, bob_angle,
                              secret_angle, plan, combo_weight, &ml_tables, acc);
    }
  }

  ExactResult result;
  result.variant = variant;
  result.k = k;
  result.attack = spec;
  result.input_descriptor = describe_input(input);
  result.mean_output_fidelity = acc.output_fidelity.value();
  if (acc.eve_defined) result.eve_accuracy = acc.eve_hits.value();
  if (acc.bob_error_defined) result.bob_error_rate = acc.bob_errors.value();

  uint64_t branching = 1;
  if (spec.kind == AttackKind::kInterceptResend) {
    branching = uint64_t{1} << spec.passes.size();
  } else if (spec.kind == AttackKind::kMitm &&
             (variant == Variant::kClassical || spec.bit_guess)) {
    branching = 2;
  }
  result.term_count = combos * branching;
  return result;
}

RunReport monte_carlo(Variant variant, uint32_t k, const AttackSpec& spec, uint32_t n,
                      const SessionSeeds& seeds, const InputDistribution& input) {
  if (input.bit_payloads() && input.bit_zero_probability != 0.5) {
    throw OracleUnsupportedError("monte_carlo draws uniform bits only");
  }

  SessionConfig cfg;
  cfg.variant = variant;
  cfg.k = k;
  cfg.n = n;
  cfg.seeds = seeds;
  cfg.attack = spec;
  if (input.bit_payloads()) {
    cfg.message_source = MessageSource::kRandomBits;
  } else {
    cfg.message_source = MessageSource::kStateSet;
    cfg.inline_states = input.states;
  }
  if (variant == Variant::kAuthenticated) {
    RngStream secret_rng(seeds.message, "secret");
    cfg.secret = derive_secret(PhaseSet(k), secret_rng, n);
  }
  return run_session(cfg);
}

std::string exact_result_to_json(const ExactResult& result) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  nlohmann::ordered_json scenario;
  scenario["variant"] = variant_name(result.variant);
  scenario["k"] = result.k;
  scenario["attack"]["kind"] = attack_kind_name(result.attack.kind);
  if (result.attack.kind == AttackKind::kInterceptResend) {
    scenario["attack"]["passes"] = result.attack.passes;
    scenario["attack"]["basis_strategy"] = basis_strategy_name(result.attack.basis_strategy);
    if (result.attack.basis_strategy == BasisStrategy::kFixed) {
      scenario["attack"]["fixed_basis"] = result.attack.fixed_basis;
    }
  }
  if (result.attack.kind == AttackKind::kMitm) {
    scenario["attack"]["secret_known"] = result.attack.secret_known;
  }
  if (result.attack.kind != AttackKind::kNone) {
    scenario["attack"]["bit_guess"] = result.attack.bit_guess;
  }
  scenario["input"] = result.input_descriptor;
  j["scenario"] = scenario;
  j["eve_accuracy"] = result.eve_accuracy ? nlohmann::ordered_json(*result.eve_accuracy)
                                          : nlohmann::ordered_json(nullptr);
  j["bob_error_rate"] = result.bob_error_rate
                            ? nlohmann::ordered_json(*result.bob_error_rate)
                            : nlohmann::ordered_json(nullptr);
  j["mean_output_fidelity"] = result.mean_output_fidelity;
  j["term_count"] = result.term_count;
  return j.dump(2) + "\n";
}

}  // namespace tripass
