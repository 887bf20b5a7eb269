#include "tripass/wire.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "tripass/errors.hpp"

namespace tripass {

namespace {

constexpr std::size_t kHelloBody = 8;    // version + variant + k(2) + n(4)
constexpr std::size_t kPhotonBody = 53;  // session(16) + position(4) + pass(1) + 4 doubles
constexpr std::size_t kAbortBody = 1;
constexpr double kWireNormTolerance = 1e-9;

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_f64(std::vector<uint8_t>& out, double d) {
  const uint64_t bits = std::bit_cast<uint64_t>(d);
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

uint16_t get_u16(const uint8_t* p) {
  return static_cast<uint16_t>((uint16_t{p[0]} << 8) | p[1]);
}

uint32_t get_u32(const uint8_t* p) {
  return (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) | (uint32_t{p[2]} << 8) |
         uint32_t{p[3]};
}

double get_f64(const uint8_t* p) {
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<uint8_t> encode_frame(const Frame& frame) {
  std::vector<uint8_t> body;
  uint8_t type = 0;

  if (const auto* hello = std::get_if<HelloFrame>(&frame)) {
    type = kFrameHello;
    body.push_back(hello->version);
    body.push_back(hello->variant);
    put_u16(body, hello->k);
    put_u32(body, hello->n);
  } else if (const auto* photon = std::get_if<PhotonFrame>(&frame)) {
    type = kFramePhoton;
    body.insert(body.end(), photon->photon.session_id.begin(),
                photon->photon.session_id.end());
    put_u32(body, photon->photon.position);
    body.push_back(photon->photon.pass_no);
    put_f64(body, photon->photon.state.amp_h.real());
    put_f64(body, photon->photon.state.amp_h.imag());
    put_f64(body, photon->photon.state.amp_v.real());
    put_f64(body, photon->photon.state.amp_v.imag());
  } else if (std::holds_alternative<DoneFrame>(frame)) {
    type = kFrameDone;
  } else {
    type = kFrameAbort;
    body.push_back(std::get<AbortFrame>(frame).reason);
  }

  std::vector<uint8_t> out;
  out.reserve(4 + 1 + body.size());
  put_u32(out, static_cast<uint32_t>(1 + body.size()));
  out.push_back(type);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::size_t peek_frame_size(std::span<const uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw FramingError(FramingError::Kind::kShortRead,
                       "need 4 bytes of length prefix, have " +
                           std::to_string(bytes.size()));
  }
  const uint32_t length = get_u32(bytes.data());
  if (length == 0) {
    throw FramingError(FramingError::Kind::kBadLength,
                       "frame length must cover at least the type byte");
  }
  if (length > kMaxFrameLength) {
    throw FramingError(FramingError::Kind::kOversize,
                       "frame length " + std::to_string(length) + " exceeds max " +
                           std::to_string(kMaxFrameLength));
  }
  return 4 + static_cast<std::size_t>(length);
}

Frame decode_frame(std::span<const uint8_t> bytes) {
  const std::size_t total = peek_frame_size(bytes);
  if (bytes.size() < total) {
    throw FramingError(FramingError::Kind::kShortRead,
                       "frame declares " + std::to_string(total) + " bytes, have " +
                           std::to_string(bytes.size()));
  }
  if (bytes.size() > total) {
    throw FramingError(FramingError::Kind::kBadLength,
                       "trailing bytes after frame end");
  }

  const uint8_t type = bytes[4];
  const std::span<const uint8_t> body = bytes.subspan(5);

  switch (type) {
    case kFrameHello: {
      if (body.size() != kHelloBody) {
        throw FramingError(FramingError::Kind::kBadLength, "HELLO body must be 8 bytes");
      }
      HelloFrame hello;
      hello.version = body[0];
      hello.variant = body[1];
      hello.k = get_u16(body.data() + 2);
      hello.n = get_u32(body.data() + 4);
      return hello;
    }
    case kFramePhoton: {
      if (body.size() != kPhotonBody) {
        throw FramingError(FramingError::Kind::kBadLength, "PHOTON body must be 53 bytes");
      }
      PhotonFrame frame;
      std::memcpy(frame.photon.session_id.data(), body.data(), 16);
      frame.photon.position = get_u32(body.data() + 16);
      frame.photon.pass_no = body[20];
      frame.photon.state.amp_h = Complex{get_f64(body.data() + 21), get_f64(body.data() + 29)};
      frame.photon.state.amp_v = Complex{get_f64(body.data() + 37), get_f64(body.data() + 45)};
      const double norm = norm_squared(frame.photon.state);
      if (!std::isfinite(norm) || std::abs(norm - 1.0) > kWireNormTolerance) {
        throw FramingError(FramingError::Kind::kBadLength,
                           "photon state is not normalized");
      }
      return frame;
    }
    case kFrameDone: {
      if (!body.empty()) {
        throw FramingError(FramingError::Kind::kBadLength, "DONE carries no body");
      }
      return DoneFrame{};
    }
    case kFrameAbort: {
      if (body.size() != kAbortBody) {
        throw FramingError(FramingError::Kind::kBadLength, "ABORT body must be 1 byte");
      }
      return AbortFrame{body[0]};
    }
    default:
      throw FramingError(FramingError::Kind::kUnknownType,
                         "unknown frame type " + std::to_string(type));
  }
}

}  // namespace tripass
