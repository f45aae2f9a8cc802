#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "cq/quadrature.hpp"

namespace cq {

/// Raised when no further node can be removed under the requested constraints.
struct ReductionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CriterionKind { prior, weight, explicit_choice };

/// Branch-selection policy for the Caratheodory exchange step. `prior`
/// removes the node with the lowest density (ties broken toward the node
/// farthest from the symmetry center); `weight` minimizes the spread of the
/// surviving weights; `explicit_choice` forces a branch (testing hook).
struct ReductionCriterion {
  CriterionKind kind = CriterionKind::prior;
  int explicit_branch = 1;
};

/// Ordered sequence of rules with strictly decreasing sizes in which every
/// smaller rule's nodes are a bitwise subset of every larger rule's nodes.
struct NestedFamily {
  std::vector<QuadratureRule> rules;  // largest -> smallest

  void validate() const;
  /// Member with exactly `n` nodes; throws if absent.
  const QuadratureRule& by_size(int n) const;
};

/// Null vector of the Vandermonde matrix with its last row removed, for >= 2
/// distinct standardized nodes. The result has both positive and negative
/// entries and scaled residual <= 1e-10 * ||c||.
Eigen::VectorXd null_vector_asymmetric(const std::vector<double>& nodes);

/// Symmetric null vector of the Vandermonde matrix with its last two rows
/// removed. `nodes` must be exactly mirrored about 0 (ascending). The result
/// satisfies c_k == c_{N-1-k} exactly, by construction from the half-size
/// even-power system.
Eigen::VectorXd null_vector_symmetric(const std::vector<double>& nodes);

/// Chooses between the two candidate weight vectors of the exchange step.
/// Both must zero the required number of entries. Returns 1 or 2.
int select_branch(const std::vector<double>& w1, const std::vector<double>& w2,
                  const ReductionCriterion& criterion, const QuadratureRule& rule);

/// One Caratheodory exchange step. A symmetric rule of N nodes (N >= 3)
/// loses a mirrored pair and keeps degree >= N-3; any other rule loses one
/// node and keeps degree >= N-2. Weights stay nonnegative; surviving nodes
/// are bitwise identical to the parent's.
QuadratureRule reduction_step(const QuadratureRule& rule, const ReductionCriterion& criterion);

/// Repeats the exchange step down to a single node.
NestedFamily nested_family(const QuadratureRule& rule, const ReductionCriterion& criterion);

/// True when the distribution is symmetric and the node set is mirror
/// invariant within 1e-12 of the support width.
bool is_symmetric_rule(const QuadratureRule& rule);

}  // namespace cq
