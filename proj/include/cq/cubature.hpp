#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "cq/multi_index.hpp"
#include "cq/quadrature.hpp"
#include "cq/reduce1d.hpp"

namespace cq {

enum class CubProvenance { tensor, smolyak, reduced, symmetric_reduced, negative_symmetric_reduced };

std::string to_string(CubProvenance p);
CubProvenance cub_provenance_from_string(const std::string& s);

/// Multi-dimensional rule over independent per-axis measures. Nodes are rows
/// of an N x d matrix in physical coordinates.
struct CubatureRule {
  std::vector<Distribution> axes;
  Eigen::MatrixXd nodes;    // N x d
  Eigen::VectorXd weights;  // N
  int degree = 0;
  CubProvenance provenance = CubProvenance::tensor;

  int dim() const { return static_cast<int>(axes.size()); }
  int size() const { return static_cast<int>(nodes.rows()); }

  /// Per-axis standardized coordinates, snapped so that mirrored values are
  /// exact negatives and equal magnitudes (within and across axes) compare
  /// bitwise. All symmetry machinery operates on this view.
  Eigen::MatrixXd standardized_nodes() const;

  double integrate(const std::function<double(const Eigen::RowVectorXd&)>& f) const;

  void validate() const;
};

/// Grouping of nodes under coordinate sign flips and permutations.
struct OrbitPartition {
  struct Orbit {
    std::vector<int> members;           // node indices
    std::vector<double> representative;  // sorted absolute standardized coords
    std::int64_t expected_size = 0;      // 2^{nnz} * #distinct permutations
  };
  std::vector<Orbit> orbits;
  std::vector<int> orbit_of;            // node -> orbit id
  std::vector<bool> on_type1_plane;     // some coordinate == 0
  std::vector<bool> on_type2_plane;     // two coordinates of equal magnitude
};

OrbitPartition orbit_partition(const Eigen::MatrixXd& standardized_nodes);

/// Node set closed under sign flips of individual coordinates (weights not
/// inspected).
bool is_type1_symmetric(const Eigen::MatrixXd& standardized_nodes);
/// Node set closed under coordinate permutations.
bool is_type2_symmetric(const Eigen::MatrixXd& standardized_nodes);

/// Tensor product of 1D rules: product nodes and weights, declared degree the
/// minimum over the axes.
CubatureRule tensor_rule(const std::vector<QuadratureRule>& axis_rules);

/// Sign-collapsed Vandermonde for sign-symmetric (type-1) rules: one column
/// per representative in the closed positive orthant, one row per
/// even-exponent monomial of total degree <= K, entries scaled by the
/// sign-orbit multiplicity 2^{nnz}. A kernel vector expands (constant on each
/// sign orbit) to a kernel vector of the full Vandermonde up to degree K.
Eigen::MatrixXd collapsed_matrix_type1(const Eigen::MatrixXd& representatives, int k);

/// Permutation-collapsed Vandermonde for type-2 (and optionally type-1)
/// symmetric rules: one column per canonical representative (sorted
/// magnitudes), one row per weakly increasing exponent multi-index. With
/// `even_rows` (sign symmetry also present) only even exponents are kept and
/// entries carry the 2^{nnz} factor; each entry sums the monomial over the
/// distinct permutations of the representative.
Eigen::MatrixXd collapsed_matrix_type12(const Eigen::MatrixXd& representatives, int k,
                                        bool even_rows = true);

/// Caratheodory reduction at fixed polynomial degree: removes nodes one per
/// kernel vector of the generalized Vandermonde (monomials of total degree
/// <= target_degree) while keeping all weights nonnegative, until the kernel
/// is exhausted. Starting from a degree-K rule with target_degree = K-1 this
/// removes dim P(K,d) - dim P(K-1,d) nodes in the generic case.
CubatureRule reduce_step_general(const CubatureRule& rule, int target_degree,
                                 const ReductionCriterion& criterion);

/// Symmetric variant: requires type-1 and type-2 symmetry, removes whole
/// orbits via the collapsed matrix while keeping weights nonnegative and
/// symmetry exact. Throws ReductionExhausted if no orbit can be removed.
CubatureRule reduce_step_symmetric(const CubatureRule& rule, int target_degree,
                                   const ReductionCriterion& criterion);

/// Negative-weight variant: per kernel vector eliminates the largest orbit in
/// its support (the gamma rule), allowing weights to go negative; stops when
/// the kernel is exhausted and returns the current rule.
CubatureRule reduce_step_negative(const CubatureRule& rule, int target_degree);

/// Largest total degree D <= cap such that every monomial of total degree
/// <= D integrates within rel 1e-8 (abs 1e-10 for near-zero moments) against
/// the product of the per-axis moments. When dim P(cap, d) exceeds 20000 a
/// seeded random subset of 20000 multi-indices is audited instead.
int verify_degree(const CubatureRule& rule, int cap);

}  // namespace cq
