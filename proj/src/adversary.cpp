#include "tripass/adversary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <string>

#include "branch_enum.hpp"
#include "tripass/errors.hpp"
#include "tripass/rng.hpp"

namespace tripass {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kLikelihoodTie = 1e-12;
}  // namespace

const char* attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::kNone: return "none";
    case AttackKind::kInterceptResend: return "intercept";
    case AttackKind::kMitm: return "mitm";
  }
  return "unknown";
}

const char* basis_strategy_name(BasisStrategy s) {
  switch (s) {
    case BasisStrategy::kFixed: return "fixed";
    case BasisStrategy::kUniformLattice: return "lattice";
    case BasisStrategy::kUniformContinuous: return "continuous";
  }
  return "unknown";
}

void validate_attack_spec(const AttackSpec& spec) {
  if (spec.kind == AttackKind::kInterceptResend) {
    if (spec.passes.empty()) {
      throw ConfigError("intercept attack needs at least one pass to intercept");
    }
    for (uint8_t p : spec.passes) {
      if (p < 1 || p > 3) {
        throw ConfigError("intercept pass numbers must lie in {1,2,3}");
      }
    }
  }
  if (spec.kind != AttackKind::kMitm && spec.secret_known) {
    throw ConfigError("secret-known analysis mode applies to the mitm attack only");
  }
  if (!std::isfinite(spec.fixed_basis)) {
    throw ConfigError("fixed intercept basis must be a finite angle");
  }
}

EvePositionRecord& EveRecord::at_position(uint32_t position) {
  if (!positions.empty() && positions.back().position == position) {
    return positions.back();
  }
  positions.push_back(EvePositionRecord{});
  positions.back().position = position;
  return positions.back();
}

namespace {

class IdentityChannel final : public Channel {
 public:
  PhotonMessage deliver(PhotonMessage photon, Direction) override { return photon; }
};

class InterceptChannel final : public Channel {
 public:
  InterceptChannel(AttackSpec spec, Variant variant, PhaseSet set)
      : spec_(std::move(spec)),
        variant_(variant),
        set_(set),
        rng_(spec_.eve_seed, "eve") {
    last_pass_ = *std::max_element(spec_.passes.begin(), spec_.passes.end());
  }

  PhotonMessage deliver(PhotonMessage photon, Direction) override {
    if (!intercepts(photon.pass_no)) return photon;

    const double basis = choose_basis();
    const MeasureOutcome m = measure(photon.state, basis, rng_.next_unit());
    record_.measurements++;

    auto& entry = record_.at_position(photon.position);
    entry.observations.push_back(InterceptObservation{
        photon.pass_no, basis, static_cast<uint8_t>(m.bit), Provenance::kMeasurement});

    if (photon.pass_no == last_pass_) finalize_guess(entry);

    photon.state = m.collapsed;
    record_.rng_draws = rng_.draw_count();
    return photon;
  }

  const EveRecord* record() const override { return &record_; }

 private:
  bool intercepts(uint8_t pass_no) const {
    return std::find(spec_.passes.begin(), spec_.passes.end(), pass_no) != spec_.passes.end();
  }

  double choose_basis() {
    switch (spec_.basis_strategy) {
      case BasisStrategy::kFixed: return spec_.fixed_basis;
      case BasisStrategy::kUniformLattice: return set_.angle_of(rng_.next_index(set_.k_count()));
      case BasisStrategy::kUniformContinuous: return std::numbers::pi * rng_.next_unit();
    }
    return 0.0;
  }

  void finalize_guess(EvePositionRecord& entry) {
    // Her best state guess is the photon she last collapsed and held.
    entry.guess_state = state_from_angle(entry.observations.back().basis +
                                         entry.observations.back().outcome * kHalfPi);
    entry.guess_provenance = Provenance::kHeldPhoton;

    if (variant_ == Variant::kClassical || spec_.bit_guess) {
      if (entry.observations.size() == 1) {
        entry.guess_bit = entry.observations.front().outcome;
      } else {
        entry.guess_bit = ml_bit_guess(variant_, set_, entry.observations);
      }
    }
  }

  AttackSpec spec_;
  Variant variant_;
  PhaseSet set_;
  RngStream rng_;
  uint8_t last_pass_ = 1;
  EveRecord record_;
};

// Man-in-the-middle: Eve terminates the quantum channel, playing an honest
// Bob toward Alice (her own angle phi_e per position) and an independent
// Alice toward Bob (blinding angle phi_f). Against the real Bob she can only
// commit a payload before his blinding rotation, so the photon he decodes at
// position i carries her decode of position i-1 (|H> for position 1); her own
// decode is exact for the classical/quantum variants and rotated by the
// unknown secret angle for the authenticated one.
class MitmChannel final : public Channel {
 public:
  MitmChannel(AttackSpec spec, Variant variant, PhaseSet set,
              std::optional<SecretAngles> secret)
      : spec_(std::move(spec)),
        variant_(variant),
        set_(set),
        secret_(std::move(secret)),
        rng_(spec_.eve_seed, "eve") {
    record_.analysis_secret_known = spec_.secret_known;
    if (spec_.secret_known && !secret_.has_value()) {
      throw ConfigError("mitm analysis mode needs the secret angles");
    }
    payload_ = PureState{{1.0, 0.0}, {0.0, 0.0}};
  }

  PhotonMessage deliver(PhotonMessage photon, Direction direction) override {
    if (direction == Direction::kBobToAlice) {
      // Bob's pass-2 response to Eve's own conversation with him.
      bob_response_ = photon.state;
      photon.state = alice_response_;
      return photon;
    }
    if (photon.pass_no == 1) {
      phi_e_ = set_.angle_of(rng_.next_index(set_.k_count()));
      phi_f_ = set_.angle_of(rng_.next_index(set_.k_count()));
      alice_response_ = rotate(photon.state, phi_e_);
      photon.state = rotate(payload_, phi_f_);
      return photon;
    }
    // Pass 3 from Alice completes Eve's Bob-side instance: remove phi_e and decode.
    PureState recovered = rotate(photon.state, -phi_e_);
    if (spec_.secret_known) {
      recovered = rotate(recovered, -set_.angle_of(secret_->indices.at(photon.position - 1)));
    }

    auto& entry = record_.at_position(photon.position);
    entry.guess_state = recovered;
    entry.guess_provenance = Provenance::kHeldPhoton;

    if (variant_ == Variant::kClassical || spec_.bit_guess) {
      const MeasureOutcome m = measure(recovered, 0.0, rng_.next_unit());
      record_.measurements++;
      entry.observations.push_back(InterceptObservation{
          3, 0.0, static_cast<uint8_t>(m.bit), Provenance::kMeasurement});
      entry.guess_bit = static_cast<uint8_t>(m.bit);
      payload_ = m.collapsed;
    } else {
      payload_ = recovered;
    }

    // Complete her Alice-side instance toward Bob with the held pass-2 photon.
    photon.state = rotate(bob_response_, -phi_f_);
    record_.rng_draws = rng_.draw_count();
    return photon;
  }

  const EveRecord* record() const override { return &record_; }

 private:
  AttackSpec spec_;
  Variant variant_;
  PhaseSet set_;
  std::optional<SecretAngles> secret_;
  RngStream rng_;
  EveRecord record_;
  PureState payload_;         // what she feeds Bob's next conversation
  PureState alice_response_;  // her pending pass-2 reply to Alice
  PureState bob_response_;    // Bob's pass-2 photon she holds
  double phi_e_ = 0.0;
  double phi_f_ = 0.0;
};

}  // namespace

std::unique_ptr<Channel> identity_channel() { return std::make_unique<IdentityChannel>(); }

std::unique_ptr<Channel> make_channel(const AttackSpec& spec, Variant variant,
                                      const PhaseSet& set,
                                      std::optional<SecretAngles> secret) {
  validate_attack_spec(spec);
  switch (spec.kind) {
    case AttackKind::kNone:
      return identity_channel();
    case AttackKind::kInterceptResend:
      return std::make_unique<InterceptChannel>(spec, variant, set);
    case AttackKind::kMitm:
      return std::make_unique<MitmChannel>(spec, variant, set, std::move(secret));
  }
  throw ConfigError("unknown attack kind");
}

std::vector<uint8_t> ml_bit_guess_table(
    Variant variant, const PhaseSet& set,
    std::span<const std::pair<uint8_t, double>> pass_bases) {
  const uint32_t k = set.k_count();
  const std::size_t m = pass_bases.size();

  detail::InterceptPlan plan;
  for (const auto& [pass_no, basis] : pass_bases) plan.basis_by_pass[pass_no - 1] = basis;

  // likelihood[packed outcomes][bit]
  std::vector<std::array<double, 2>> likelihood(std::size_t{1} << m, {0.0, 0.0});

  const bool with_secret = variant == Variant::kAuthenticated;
  const uint32_t c_count = with_secret ? k : 1;
  for (uint8_t a = 0; a < 2; ++a) {
    const PureState payload = state_from_angle(a * kHalfPi);
    for (uint32_t ci = 0; ci < c_count; ++ci) {
      for (uint32_t ai = 0; ai < k; ++ai) {
        for (uint32_t bi = 0; bi < k; ++bi) {
          const auto leaves = detail::enumerate_branches(
              payload, with_secret ? set.angle_of(ci) : 0.0, set.angle_of(ai),
              set.angle_of(bi), plan);
          for (const auto& leaf : leaves) {
            std::size_t packed = 0;
            for (std::size_t j = 0; j < leaf.outcomes.size(); ++j) {
              packed |= static_cast<std::size_t>(leaf.outcomes[j]) << j;
            }
            likelihood[packed][a] += leaf.weight;
          }
        }
      }
    }
  }

  std::vector<uint8_t> table(likelihood.size(), 0);
  for (std::size_t packed = 0; packed < likelihood.size(); ++packed) {
    const double l0 = likelihood[packed][0];
    const double l1 = likelihood[packed][1];
    if (std::abs(l0 - l1) <= kLikelihoodTie * std::max({l0, l1, 1.0})) {
      table[packed] = static_cast<uint8_t>(packed & 1);  // first observation's outcome
    } else {
      table[packed] = l1 > l0 ? 1 : 0;
    }
  }
  return table;
}

uint8_t ml_bit_guess(Variant variant, const PhaseSet& set,
                     std::span<const InterceptObservation> observations) {
  if (observations.empty()) {
    throw ContractViolation("ml_bit_guess needs at least one observation");
  }
  if (observations.size() == 1) return observations.front().outcome;

  std::vector<std::pair<uint8_t, double>> pass_bases;
  pass_bases.reserve(observations.size());
  std::size_t packed = 0;
  for (std::size_t j = 0; j < observations.size(); ++j) {
    pass_bases.emplace_back(observations[j].pass_no, observations[j].basis);
    packed |= static_cast<std::size_t>(observations[j].outcome) << j;
  }

  // Decision tables depend only on (variant, K, bases); memoize per tuple.
  struct Key {
    Variant variant;
    uint32_t k;
    std::vector<std::pair<uint8_t, uint64_t>> bases_bits;
    auto operator<=>(const Key&) const = default;
  };
  thread_local std::map<Key, std::vector<uint8_t>> cache;

  Key key{variant, set.k_count(), {}};
  for (const auto& [pass_no, basis] : pass_bases) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(basis));
    std::memcpy(&bits, &basis, sizeof(bits));
    key.bases_bits.emplace_back(pass_no, bits);
  }

  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(std::move(key), ml_bit_guess_table(variant, set, pass_bases)).first;
  }
  return it->second.at(packed);
}

}  // namespace tripass
