#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tripass {

uint64_t fnv1a64(std::string_view s);
uint64_t splitmix64(uint64_t x);

// Seedable uniform source with independent named streams per party.
//
// The stream seed is splitmix64(seed XOR fnv1a64(name)) and the engine is
// std::mt19937_64, whose output sequence is pinned by the C++ standard, so
// every draw is reproducible across platforms and processes.
class RngStream {
 public:
  RngStream(uint64_t seed, std::string_view stream_name);

  uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution.
  double next_unit();

  // Uniform on [0, k). Rejection sampling over the smallest binary range >= k,
  // so the distribution is exactly uniform for every k, not just powers of two.
  uint32_t next_index(uint32_t k);

  // Number of raw engine draws so far. Used by tests that pin down exactly
  // what an adversary's behavior may depend on.
  uint64_t draw_count() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  uint64_t draws_ = 0;
};

}  // namespace tripass
