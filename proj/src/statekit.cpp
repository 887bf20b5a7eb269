#include "tripass/statekit.hpp"

#include <algorithm>
#include <cmath>

#include "tripass/errors.hpp"

namespace tripass {

namespace {

void require_finite_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw InvalidAngleError("angle must be a finite real (radians)");
  }
}

}  // namespace

PureState state_from_angle(double radians) {
  require_finite_angle(radians);
  return PureState{Complex{std::cos(radians), 0.0},
                   Complex{std::sin(radians), 0.0}};
}

PureState rotate(const PureState& s, double radians) {
  require_finite_angle(radians);
  const double c = std::cos(radians);
  const double sn = std::sin(radians);
  return PureState{c * s.amp_h - sn * s.amp_v, sn * s.amp_h + c * s.amp_v};
}

MeasureOutcome measure(const PureState& s, double basis_radians, double u) {
  require_finite_angle(basis_radians);
  if (!(u >= 0.0 && u < 1.0)) {
    throw ContractViolation("measure: u must lie in [0,1)");
  }
  const double c = std::cos(basis_radians);
  const double sn = std::sin(basis_radians);
  // <basis|s> with the real basis vector (cos, sin).
  const Complex overlap = c * s.amp_h + sn * s.amp_v;
  const double p0 = std::clamp(std::norm(overlap), 0.0, 1.0);
  const int bit = (u < p0) ? 0 : 1;
  const double half_pi = std::acos(0.0);
  return MeasureOutcome{bit, state_from_angle(basis_radians + bit * half_pi)};
}

double norm_squared(const PureState& s) {
  return std::norm(s.amp_h) + std::norm(s.amp_v);
}

double fidelity(const PureState& a, const PureState& b) {
  const Complex overlap = std::conj(a.amp_h) * b.amp_h + std::conj(a.amp_v) * b.amp_v;
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace tripass
