#include "tripass/rng.hpp"

#include <bit>

#include "tripass/errors.hpp"

namespace tripass {

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(uint64_t seed, std::string_view stream_name)
    : engine_(splitmix64(seed ^ fnv1a64(stream_name))) {}

uint64_t RngStream::next_u64() {
  ++draws_;
  return engine_();
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint32_t RngStream::next_index(uint32_t k) {
  if (k == 0) throw ContractViolation("next_index: k must be positive");
  if (k == 1) return 0;
  const uint64_t mask = (std::bit_ceil<uint64_t>(k)) - 1;
  for (;;) {
    const uint64_t v = next_u64() & mask;
    if (v < k) return static_cast<uint32_t>(v);
  }
}

}  // namespace tripass
