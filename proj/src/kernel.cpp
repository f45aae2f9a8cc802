#include "kernel_internal.hpp"

#include <Eigen/SVD>

namespace cq::detail {

Eigen::MatrixXd equilibrate_rows(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd out = a;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double m = out.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) out.row(i) /= m;
  }
  return out;
}

KernelResult kernel_basis(const Eigen::MatrixXd& a, double rank_tol) {
  const Eigen::MatrixXd eq = equilibrate_rows(a);
  KernelResult res;
  const Eigen::Index n = eq.cols();

  Eigen::VectorXd sv;
  Eigen::MatrixXd v;
  if (eq.rows() * n <= 64 * 64) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eq, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(eq, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  }

  res.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = rank_tol * res.sigma_max;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  res.sigma_min = rank > 0 ? sv(rank - 1) : 0.0;
  res.basis = v.rightCols(n - rank);
  return res;
}

double scaled_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& c) {
  const Eigen::MatrixXd eq = equilibrate_rows(a);
  const double cn = c.cwiseAbs().maxCoeff();
  if (cn == 0.0) return 0.0;
  return (eq * c).cwiseAbs().maxCoeff() / cn;
}

}  // namespace cq::detail
