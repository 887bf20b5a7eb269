#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tripass {

// Thrown when an angle argument is not a finite real.
struct InvalidAngleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Caller violated a documented precondition (e.g. measurement variate outside [0,1)).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Phase index outside [0, K-1].
struct PhaseRangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Zero-length message where n >= 1 is required.
struct EmptyMessageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Photon arrived out of cursor order (wrong position or pass number).
struct ProtocolOrderError : std::logic_error {
  using std::logic_error::logic_error;
};

// Authenticated variant started without pre-shared secret angles.
struct MissingSecretError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Session configuration violates an invariant.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Scenario the exact enumerator cannot handle (continuous bases are Monte Carlo only).
struct OracleUnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Enumeration would exceed the documented term-count guard.
struct EnumerationGuardError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Byte-stream framing violation. Each failure mode is distinct.
class FramingError : public std::runtime_error {
 public:
  enum class Kind : uint8_t { kShortRead, kBadLength, kUnknownType, kOversize };

  FramingError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A running session could not complete; carries the last fully finished position.
class SessionAbortError : public std::runtime_error {
 public:
  SessionAbortError(uint32_t position_reached, const std::string& what)
      : std::runtime_error(what), position_reached_(position_reached) {}

  uint32_t position_reached() const { return position_reached_; }

 private:
  uint32_t position_reached_;
};

}  // namespace tripass
