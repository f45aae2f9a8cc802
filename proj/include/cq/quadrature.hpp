#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cq/distribution.hpp"

namespace cq {

enum class Provenance { gauss, clenshaw_curtis, vandermonde_solve, reduced };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// Nodes and weights approximating integration against a 1D probability
/// measure. Nodes are stored sorted ascending in physical coordinates;
/// `degree` is the declared polynomial exactness (see verify_degree for the
/// audited one).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int degree = 0;
  Distribution dist = Distribution::uniform(-1.0, 1.0);
  Provenance provenance = Provenance::vandermonde_solve;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Nodes mapped through the distribution's affine standardization.
  std::vector<double> normalized_nodes() const;

  double integrate(const std::function<double(double)>& f) const;

  /// Checks node distinctness and weight normalization; throws on violation.
  void validate() const;
};

/// Gauss rule of the distribution via the Golub-Welsch eigenvalue method on
/// the closed-form three-term recurrence (Legendre, Jacobi or Hermite).
/// N nodes, degree 2N-1, positive weights; symmetric node set whenever the
/// distribution is symmetric.
QuadratureRule gauss_rule(const Distribution& dist, int n);

/// Clenshaw-Curtis rule: Chebyshev extrema mapped onto the (bounded) support,
/// weights solved against the distribution's moments. Declared degree N-1.
/// Node sets for sizes 2^{k-1}+1 are nested bitwise.
QuadratureRule clenshaw_curtis_rule(const Distribution& dist, int n);

/// Unique weights making `nodes` a rule of degree N-1 for `dist`, by solving
/// the Vandermonde system in standardized coordinates. Sizes above 64 are
/// rejected unless `relax_size_guard` is set.
std::vector<double> weights_from_nodes(const Distribution& dist,
                                       const std::vector<double>& nodes,
                                       bool relax_size_guard = false);

/// Largest K <= declared degree + 2 such that all monomials x^j, j <= K,
/// integrate with relative error <= 1e-8 (absolute 1e-10 for near-zero
/// moments). The audit runs in standardized coordinates.
int verify_degree(const QuadratureRule& rule);

}  // namespace cq
