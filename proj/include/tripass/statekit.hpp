#pragma once

#include <complex>

namespace tripass {

using Complex = std::complex<double>;

// Normalized single-qubit polarization state: amp_h|H> + amp_v|V>.
//
// States are compared by fidelity, never componentwise: global phase and the
// sign flip R(pi) = -I are physically irrelevant.
struct PureState {
  Complex amp_h{1.0, 0.0};
  Complex amp_v{0.0, 0.0};
};

inline constexpr double kNormTolerance = 1e-12;

// |phi> = cos(phi)|H> + sin(phi)|V>.
PureState state_from_angle(double radians);

// Applies the rotation [[cos phi, -sin phi], [sin phi, cos phi]] to the
// amplitude pair. The matrix is real, so it acts on arbitrary complex
// amplitudes, and rotations about the propagation axis all commute.
PureState rotate(const PureState& s, double radians);

struct MeasureOutcome {
  int bit = 0;  // 0: collapsed onto |basis>, 1: onto |basis + pi/2>
  PureState collapsed;
};

// Born-rule measurement in the linear basis {|basis>, |basis + pi/2>}.
// Outcome 0 has probability |<basis|s>|^2 and is taken iff u < p0.
// u must come from the caller's seeded uniform source; statekit holds no
// randomness of its own.
MeasureOutcome measure(const PureState& s, double basis_radians, double u);

double norm_squared(const PureState& s);

// |<a|b>|^2, clamped to [0,1]. Invariant under global phase of either side.
double fidelity(const PureState& a, const PureState& b);

}  // namespace tripass
