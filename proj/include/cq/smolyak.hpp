#pragma once

#include <memory>
#include <vector>

#include "cq/cubature.hpp"
#include "cq/quadrature.hpp"
#include "cq/reduce1d.hpp"

namespace cq {

/// Rule-size sequence for sparse grids: N_1 = 1, N_k = 2^{k-1}+1 for k >= 2
/// (chosen so that Clenshaw-Curtis node sets nest across levels).
int level_size(int k);

/// A leveled source of 1D rules for the sparse-grid combination.
class QuadratureFamily {
 public:
  virtual ~QuadratureFamily() = default;
  virtual QuadratureRule level_rule(int level) const = 0;
  /// True when node sets nest bitwise across levels, enabling exact merging.
  virtual bool nested() const = 0;
  virtual const Distribution& distribution() const = 0;
};

class ClenshawCurtisFamily final : public QuadratureFamily {
 public:
  explicit ClenshawCurtisFamily(Distribution dist) : dist_(std::move(dist)) {}
  QuadratureRule level_rule(int level) const override;
  bool nested() const override { return true; }
  const Distribution& distribution() const override { return dist_; }

 private:
  Distribution dist_;
};

class GaussFamily final : public QuadratureFamily {
 public:
  explicit GaussFamily(Distribution dist) : dist_(std::move(dist)) {}
  QuadratureRule level_rule(int level) const override;
  bool nested() const override { return false; }
  const Distribution& distribution() const override { return dist_; }

 private:
  Distribution dist_;
};

/// Adapter over a reduction family: the level-k rule is the member with
/// exactly N_k nodes. Throws (naming the level) when the family has no member
/// of the required size.
class ReducedFamily final : public QuadratureFamily {
 public:
  explicit ReducedFamily(NestedFamily family);
  QuadratureRule level_rule(int level) const override;
  bool nested() const override { return true; }
  const Distribution& distribution() const override;

 private:
  NestedFamily family_;
};

struct SmolyakResult {
  CubatureRule rule;
  int dropped_zero_weight_nodes = 0;  // merged nodes removed at |w| <= 1e-14
};

/// Sparse-grid combination of tensor products over levels
/// K-d+1 <= |alpha|_1 <= K with coefficients (-1)^{K-|alpha|} C(d-1, K-|alpha|).
/// Coincident nodes are merged (exactly for nested families, within 1e-12 of
/// standardized coordinates otherwise).
SmolyakResult smolyak_rule(const std::vector<const QuadratureFamily*>& axes, int k);

/// Convenience overload: the same family on every axis.
SmolyakResult smolyak_rule(const QuadratureFamily& family, int k, int d);

/// Audits verify_degree(rule) >= 2(K-d)+1.
bool smolyak_degree_check(const CubatureRule& rule, int k, int d);

/// kappa = sum |w| / sum w. Requires a nonzero weight sum.
double condition_number(const Eigen::VectorXd& weights);
double condition_number(const std::vector<double>& weights);

}  // namespace cq
