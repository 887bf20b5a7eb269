#pragma once

// Internal: exact branch enumeration of one three-pass exchange with optional
// intercept/resend measurements. Shared by the adversary's maximum-likelihood
// rule and the oracle's exhaustive enumeration.

#include <array>
#include <optional>
#include <vector>

#include "tripass/statekit.hpp"

namespace tripass::detail {

struct InterceptPlan {
  // Basis (radians) per pass 1..3; nullopt means the pass is not intercepted.
  std::array<std::optional<double>, 3> basis_by_pass{};

  int measurement_count() const {
    int c = 0;
    for (const auto& b : basis_by_pass) c += b.has_value() ? 1 : 0;
    return c;
  }
};

struct BranchLeaf {
  PureState pre_finish;            // state of the pass-3 photon reaching Bob
  double weight = 1.0;             // product of Born probabilities on the path
  std::vector<uint8_t> outcomes;   // intercept outcomes in pass order
};

// Walks Alice's encode (+secret+local), Bob's +local, Alice's -local, branching
// into both outcomes wherever the plan measures. Collapse follows projective
// intercept/resend semantics: the forwarded state is the basis eigenstate.
std::vector<BranchLeaf> enumerate_branches(const PureState& payload,
                                           double secret_angle, double alice_angle,
                                           double bob_angle, const InterceptPlan& plan);

}  // namespace tripass::detail
