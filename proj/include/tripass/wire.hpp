#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tripass/protocol.hpp"

namespace tripass {

inline constexpr uint8_t kProtocolVersion = 1;

// Whole frame on the wire: 4-byte big-endian length prefix, then type + body.
// The length counts type + body; the whole frame never exceeds 4096 bytes.
inline constexpr std::size_t kMaxFrameBytes = 4096;
inline constexpr std::size_t kMaxFrameLength = kMaxFrameBytes - 4;

inline constexpr uint8_t kFrameHello = 0x01;
inline constexpr uint8_t kFramePhoton = 0x02;
inline constexpr uint8_t kFrameDone = 0x03;
inline constexpr uint8_t kFrameAbort = 0x04;

inline constexpr uint8_t kAbortParamMismatch = 0x01;
inline constexpr uint8_t kAbortVersionMismatch = 0x02;
inline constexpr uint8_t kAbortProtocolError = 0x03;

struct HelloFrame {
  uint8_t version = kProtocolVersion;
  uint8_t variant = 0;
  uint16_t k = 0;
  uint32_t n = 0;

  bool operator==(const HelloFrame&) const = default;
};

struct PhotonFrame {
  PhotonMessage photon;
};

struct DoneFrame {
  bool operator==(const DoneFrame&) const = default;
};

struct AbortFrame {
  uint8_t reason = 0;

  bool operator==(const AbortFrame&) const = default;
};

using Frame = std::variant<HelloFrame, PhotonFrame, DoneFrame, AbortFrame>;

std::vector<uint8_t> encode_frame(const Frame& frame);

// Decodes exactly one frame covering the whole span. Failure modes are
// distinct FramingError kinds: short read, bad length, unknown type,
// oversize. A decoded photon state must be normalized within 1e-9.
Frame decode_frame(std::span<const uint8_t> bytes);

// Total frame size implied by a length prefix; needs at least 4 bytes.
std::size_t peek_frame_size(std::span<const uint8_t> bytes);

}  // namespace tripass
