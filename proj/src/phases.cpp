#include "tripass/phases.hpp"

#include <numbers>
#include <string>

#include "tripass/errors.hpp"

namespace tripass {

PhaseSet::PhaseSet(uint32_t k_count) : k_count_(k_count) {
  if (k_count < 2) {
    throw ConfigError("phase set requires K >= 2; K = " + std::to_string(k_count) +
                      " voids every security property");
  }
}

double PhaseSet::angle_of(PhaseIndex k) const {
  if (k >= k_count_) {
    throw PhaseRangeError("phase index " + std::to_string(k) +
                          " out of range [0," + std::to_string(k_count_) + ")");
  }
  return static_cast<double>(k) * std::numbers::pi / static_cast<double>(k_count_);
}

std::vector<PhaseIndex> sample(const PhaseSet& set, RngStream& rng, std::size_t n) {
  if (n == 0) throw EmptyMessageError("cannot sample an empty index sequence");
  std::vector<PhaseIndex> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.next_index(set.k_count()));
  return out;
}

SecretAngles derive_secret(const PhaseSet& set, RngStream& rng, std::size_t n) {
  return SecretAngles{set.k_count(), sample(set, rng, n)};
}

}  // namespace tripass
