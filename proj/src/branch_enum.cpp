#include "branch_enum.hpp"

#include <cmath>
#include <numbers>

namespace tripass::detail {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Splits every pending branch into the two projective outcomes of a
// measurement in `basis`, appending the outcome bit and multiplying in the
// Born probability.
void branch_measure(std::vector<BranchLeaf>& leaves, double basis) {
  std::vector<BranchLeaf> next;
  next.reserve(leaves.size() * 2);
  const PureState b0 = state_from_angle(basis);
  const PureState b1 = state_from_angle(basis + kHalfPi);
  for (const auto& leaf : leaves) {
    const double p0 = fidelity(b0, leaf.pre_finish);
    for (uint8_t outcome = 0; outcome < 2; ++outcome) {
      BranchLeaf child = leaf;
      child.weight *= (outcome == 0) ? p0 : 1.0 - p0;
      child.outcomes.push_back(outcome);
      child.pre_finish = (outcome == 0) ? b0 : b1;
      next.push_back(std::move(child));
    }
  }
  leaves = std::move(next);
}

void apply_rotation(std::vector<BranchLeaf>& leaves, double angle) {
  for (auto& leaf : leaves) leaf.pre_finish = rotate(leaf.pre_finish, angle);
}

}  // namespace

std::vector<BranchLeaf> enumerate_branches(const PureState& payload,
                                           double secret_angle, double alice_angle,
                                           double bob_angle, const InterceptPlan& plan) {
  std::vector<BranchLeaf> leaves;
  leaves.push_back(BranchLeaf{rotate(payload, secret_angle + alice_angle), 1.0, {}});

  if (plan.basis_by_pass[0]) branch_measure(leaves, *plan.basis_by_pass[0]);
  apply_rotation(leaves, bob_angle);
  if (plan.basis_by_pass[1]) branch_measure(leaves, *plan.basis_by_pass[1]);
  apply_rotation(leaves, -alice_angle);
  if (plan.basis_by_pass[2]) branch_measure(leaves, *plan.basis_by_pass[2]);

  return leaves;
}

}  // namespace tripass::detail
