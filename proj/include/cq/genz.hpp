#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cq/cubature.hpp"
#include "cq/distribution.hpp"

namespace cq {

/// One of the six standard integrand families on [0,1]^n: oscillatory,
/// product peak, corner peak, Gaussian, C0, discontinuous. The difficulty
/// vector satisfies ||a||_2 = 2.5 and the shift vector ||u||_2 = 1, with all
/// components positive.
struct GenzSpec {
  int family = 1;  // 1..6
  int n = 1;
  Eigen::VectorXd a;
  Eigen::VectorXd u;
  std::uint64_t seed = 0;

  void validate() const;
};

double genz_evaluate(const GenzSpec& spec, const Eigen::RowVectorXd& x);

/// Closed-form integral over [0,1]^n under the uniform measure.
double genz_exact_uniform(const GenzSpec& spec);

struct ReferenceIntegral {
  double value = 0.0;
  double error_estimate = 0.0;  // |30-node estimate - 25-node estimate|
};

/// Tensor-Gauss reference (30 nodes per axis, error estimated against 25) for
/// arbitrary per-axis distributions on [0,1]. Feasible for n <= 6.
ReferenceIntegral genz_reference(const GenzSpec& spec, const std::vector<Distribution>& axes);

/// Deterministic random coefficients: components drawn i.i.d. uniform(0,1)
/// from a seeded mt19937_64 (doubles built as (x >> 11) * 2^-53), then
/// rescaled to the required norms.
GenzSpec genz_random_spec(int family, int n, std::uint64_t seed);

struct LadderEntry {
  std::string name;
  CubatureRule rule;
};

struct StudyRow {
  std::string rule_name;
  int nodes = 0;
  int degree = 0;
  double mean_error = 0.0;
};

/// Mean absolute integration error of each ladder rule over `runs` random
/// specs (seeds base_seed, base_seed+1, ...), against the closed-form uniform
/// integral. Deterministic given the seed.
std::vector<StudyRow> convergence_study(const std::vector<LadderEntry>& ladder, int family,
                                        int n, int runs, std::uint64_t base_seed);

}  // namespace cq
