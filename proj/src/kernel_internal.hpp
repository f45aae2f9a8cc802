#pragma once

#include <Eigen/Dense>

namespace cq::detail {

/// Row-equilibrated copy of A: each row divided by its max-magnitude entry.
/// Rows that are identically zero (e.g. underflowed high powers) are left as
/// zeros; they impose no constraint.
Eigen::MatrixXd equilibrate_rows(const Eigen::MatrixXd& a);

struct KernelResult {
  Eigen::MatrixXd basis;     // columns span the numerical null space
  double sigma_max = 0.0;
  double sigma_min = 0.0;    // smallest singular value above the rank cut
};

/// Numerical null space of A via SVD of the row-equilibrated matrix.
/// Rank tolerance is `rank_tol` times the largest singular value.
KernelResult kernel_basis(const Eigen::MatrixXd& a, double rank_tol = 1e-12);

/// Max-norm residual of the equilibrated system, ||A_eq c||_inf / ||c||_inf.
double scaled_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& c);

}  // namespace cq::detail
