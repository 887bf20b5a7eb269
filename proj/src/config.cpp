#include "tripass/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>
#include <sys/stat.h>

#include "tripass/errors.hpp"

namespace tripass {

const char* message_source_name(MessageSource s) {
  switch (s) {
    case MessageSource::kRandomBits: return "random_bits";
    case MessageSource::kBitFile: return "bit_file";
    case MessageSource::kRandomQubits: return "random_qubits";
    case MessageSource::kQubitAngleFile: return "qubit_angle_file";
    case MessageSource::kStateSet: return "state_set";
  }
  return "unknown";
}

void validate_config(const SessionConfig& cfg) {
  if (cfg.k < 2) throw ConfigError("k must be at least 2");
  if (cfg.k > 65535) throw ConfigError("k must fit the 16-bit wire field (k <= 65535)");
  if (cfg.n < 1) throw ConfigError("n must be at least 1");

  const bool bit_source = cfg.message_source == MessageSource::kRandomBits ||
                          cfg.message_source == MessageSource::kBitFile;
  if (cfg.variant == Variant::kClassical && !bit_source) {
    throw ConfigError("the classical variant takes bit messages only");
  }

  if (cfg.variant == Variant::kAuthenticated && !cfg.secret.has_value()) {
    throw ConfigError("the auth variant requires pre-shared secret angles");
  }
  if (cfg.variant != Variant::kAuthenticated && cfg.secret.has_value()) {
    throw ConfigError("secret angles are only used by the auth variant");
  }
  if (cfg.secret.has_value()) {
    if (cfg.secret->indices.size() != cfg.n) {
      throw ConfigError("secret angle count must equal n");
    }
    if (cfg.secret->k_count != cfg.k) {
      throw ConfigError("secret angles were generated for a different k");
    }
    for (PhaseIndex idx : cfg.secret->indices) {
      if (idx >= cfg.k) throw ConfigError("secret angle index out of range for k");
    }
  }

  switch (cfg.message_source) {
    case MessageSource::kBitFile:
      if (cfg.inline_bits.size() != cfg.n) {
        throw ConfigError("bit file must supply exactly n bits");
      }
      for (uint8_t b : cfg.inline_bits) {
        if (b > 1) throw ConfigError("bit file entries must be 0 or 1");
      }
      break;
    case MessageSource::kQubitAngleFile:
      if (cfg.inline_angles.size() != cfg.n) {
        throw ConfigError("qubit angle file must supply exactly n angles");
      }
      for (double a : cfg.inline_angles) {
        if (!std::isfinite(a)) throw ConfigError("qubit angle file entries must be finite");
      }
      break;
    case MessageSource::kStateSet:
      if (cfg.inline_states.empty()) {
        throw ConfigError("state-set source needs at least one state");
      }
      break;
    default:
      break;
  }

  validate_attack_spec(cfg.attack);
  if (cfg.attack.secret_known && !cfg.secret.has_value()) {
    throw ConfigError("secret-known analysis mode needs the secret angles");
  }
}

SessionId derive_session_id(const SessionConfig& cfg) {
  uint64_t h = fnv1a64("tripass.session.v1");
  h = splitmix64(h ^ static_cast<uint64_t>(cfg.variant));
  h = splitmix64(h ^ cfg.k);
  h = splitmix64(h ^ cfg.n);
  h = splitmix64(h ^ cfg.seeds.alice);
  h = splitmix64(h ^ cfg.seeds.bob);
  h = splitmix64(h ^ cfg.seeds.message);
  const uint64_t lo = splitmix64(h);
  SessionId id{};
  for (int i = 0; i < 8; ++i) {
    id[i] = static_cast<uint8_t>(h >> (56 - 8 * i));
    id[8 + i] = static_cast<uint8_t>(lo >> (56 - 8 * i));
  }
  return id;
}

Message materialize_message(const SessionConfig& cfg, RngStream& message_rng) {
  Message msg;
  const bool qubit_variant = cfg.variant != Variant::kClassical;
  constexpr double kHalfPi = std::numbers::pi / 2.0;

  switch (cfg.message_source) {
    case MessageSource::kRandomBits:
      for (uint32_t i = 0; i < cfg.n; ++i) {
        msg.bits.push_back(static_cast<uint8_t>(message_rng.next_index(2)));
      }
      break;
    case MessageSource::kBitFile:
      msg.bits = cfg.inline_bits;
      break;
    case MessageSource::kRandomQubits:
      for (uint32_t i = 0; i < cfg.n; ++i) {
        if (cfg.complex_amplitudes) {
          // Haar on the Bloch sphere up to global phase: |amp_v|^2 uniform,
          // relative phase uniform.
          const double theta = std::asin(std::sqrt(message_rng.next_unit()));
          const double phase = 2.0 * std::numbers::pi * message_rng.next_unit();
          msg.qubits.push_back(PureState{
              Complex{std::cos(theta), 0.0},
              std::polar(std::sin(theta), phase)});
        } else {
          msg.qubits.push_back(state_from_angle(std::numbers::pi * message_rng.next_unit()));
        }
      }
      break;
    case MessageSource::kQubitAngleFile:
      for (double a : cfg.inline_angles) msg.qubits.push_back(state_from_angle(a));
      break;
    case MessageSource::kStateSet:
      for (uint32_t i = 0; i < cfg.n; ++i) {
        msg.qubits.push_back(
            cfg.inline_states[message_rng.next_index(static_cast<uint32_t>(cfg.inline_states.size()))]);
      }
      break;
  }

  // Basis-encode bit payloads for the qubit variants, keeping the bits as truth.
  if (qubit_variant && msg.qubits.empty()) {
    for (uint8_t a : msg.bits) msg.qubits.push_back(state_from_angle(a * kHalfPi));
  }
  if (!qubit_variant) msg.qubits.clear();
  return msg;
}

SecretAngles load_secret_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open secret file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("secret file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("indices")) {
    throw ConfigError("secret file must be {\"k\": K, \"indices\": [...]}");
  }
  SecretAngles secret;
  secret.k_count = j.at("k").get<uint32_t>();
  secret.indices = j.at("indices").get<std::vector<PhaseIndex>>();
  return secret;
}

void save_secret_file(const SecretAngles& secret, const std::string& path) {
  nlohmann::json j;
  j["k"] = secret.k_count;
  j["indices"] = secret.indices;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write secret file: " + path);
  out << j.dump() << "\n";
  out.close();
  ::chmod(path.c_str(), 0600);
}

}  // namespace tripass
