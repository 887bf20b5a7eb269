#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tripass/rng.hpp"

namespace tripass {

using PhaseIndex = uint32_t;

// The K-element angle lattice {k*pi/K : k = 0..K-1}.
//
// K >= 2 is required: K = 1 collapses the set to {0}, every secret rotation
// becomes the identity, and an interceptor reads every bit.
class PhaseSet {
 public:
  explicit PhaseSet(uint32_t k_count);

  uint32_t k_count() const { return k_count_; }

  // k*pi/K in one expression; no accumulation. Throws PhaseRangeError when
  // the index is out of range.
  double angle_of(PhaseIndex k) const;

 private:
  uint32_t k_count_;
};

// n indices, each uniform on [0, K-1], stream-deterministic under the seed.
std::vector<PhaseIndex> sample(const PhaseSet& set, RngStream& rng, std::size_t n);

// The pre-shared secret rotation sequence, held identically by both honest
// parties and never placed on the simulated quantum channel.
struct SecretAngles {
  uint32_t k_count = 0;
  std::vector<PhaseIndex> indices;
};

SecretAngles derive_secret(const PhaseSet& set, RngStream& rng, std::size_t n);

}  // namespace tripass
