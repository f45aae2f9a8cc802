#include "cq/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "cq/warnings.hpp"

namespace cq {

namespace {

WarningHandler g_warning_handler;

// Monic three-term recurrence coefficients: p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
struct Recurrence {
  std::function<double(int)> diag;      // a_k, k >= 0
  std::function<double(int)> offdiag2;  // b_k, k >= 1 (squared off-diagonal)
};

Recurrence recurrence_for(const Distribution& dist) {
  switch (dist.kind()) {
    case DistKind::uniform:
      return {[](int) { return 0.0; },
              [](int k) {
                const double kk = k;
                return kk * kk / (4.0 * kk * kk - 1.0);
              }};
    case DistKind::beta: {
      // Jacobi weight (1-t)^alpha (1+t)^beta with alpha = b-1, beta = a-1.
      const double al = dist.shape_b() - 1.0;
      const double be = dist.shape_a() - 1.0;
      return {[al, be](int k) {
                if (k == 0) return (be - al) / (al + be + 2.0);
                const double s = 2.0 * k + al + be;
                return (be * be - al * al) / (s * (s + 2.0));
              },
              [al, be](int k) {
                if (k == 1) {
                  const double s = al + be + 2.0;
                  return 4.0 * (al + 1.0) * (be + 1.0) / (s * s * (s + 1.0));
                }
                const double kk = k;
                const double s = 2.0 * kk + al + be;
                return 4.0 * kk * (kk + al) * (kk + be) * (kk + al + be) /
                       (s * s * (s + 1.0) * (s - 1.0));
              }};
    }
    case DistKind::normal:
      return {[](int) { return 0.0; }, [](int k) { return static_cast<double>(k); }};
  }
  throw std::logic_error("unknown distribution kind");
}

// Enforce exact mirror symmetry on a sorted standardized node set; pairs are
// averaged, the middle node of an odd rule is pinned to 0.
void symmetrize(std::vector<double>& t, std::vector<double>& w) {
  const int n = static_cast<int>(t.size());
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double v = 0.5 * (t[j] - t[i]);
    t[i] = -v;
    t[j] = v;
    const double wm = 0.5 * (w[i] + w[j]);
    w[i] = wm;
    w[j] = wm;
  }
  if (n % 2 == 1) t[n / 2] = 0.0;
}

}  // namespace

void set_warning_handler(WarningHandler handler) { g_warning_handler = std::move(handler); }

void emit_warning(const std::string& message) {
  if (g_warning_handler) g_warning_handler(message);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::gauss: return "gauss";
    case Provenance::clenshaw_curtis: return "clenshaw_curtis";
    case Provenance::vandermonde_solve: return "vandermonde_solve";
    case Provenance::reduced: return "reduced";
  }
  return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "gauss") return Provenance::gauss;
  if (s == "clenshaw_curtis") return Provenance::clenshaw_curtis;
  if (s == "vandermonde_solve") return Provenance::vandermonde_solve;
  if (s == "reduced") return Provenance::reduced;
  throw std::invalid_argument("unknown provenance tag: " + s);
}

std::vector<double> QuadratureRule::normalized_nodes() const {
  const double c = dist.center();
  const double h = dist.scale();
  std::vector<double> t(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) t[i] = (nodes[i] - c) / h;
  return t;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

void QuadratureRule::validate() const {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw std::invalid_argument("rule must have matching nonempty nodes and weights");
  }
  double span = nodes.back() - nodes.front();
  if (span <= 0.0) span = dist.scale();
  for (size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] - nodes[i - 1] > 1e-13 * std::max(span, 1e-300))) {
      throw std::invalid_argument("rule nodes must be strictly increasing and distinct");
    }
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-12 * std::max(1.0, std::abs(sum))) {
    throw std::invalid_argument("rule weights must sum to 1");
  }
}

QuadratureRule gauss_rule(const Distribution& dist, int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule requires n >= 1");
  const Recurrence rec = recurrence_for(dist);

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jac(k, k) = rec.diag(k);
    if (k + 1 < n) {
      const double b = rec.offdiag2(k + 1);
      if (!(b > 0.0)) throw std::runtime_error("invalid recurrence coefficient");
      const double sq = std::sqrt(b);
      jac(k, k + 1) = sq;
      jac(k + 1, k) = sq;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("gauss_rule: tridiagonal eigen-solve did not converge");
  }

  std::vector<double> t(n), w(n);
  for (int i = 0; i < n; ++i) {
    t[i] = es.eigenvalues()(i);
    const double q = es.eigenvectors()(0, i);
    w[i] = q * q;  // zeroth moment of a probability measure is 1
  }
  if (dist.symmetry_center()) symmetrize(t, w);

  QuadratureRule rule;
  const double c = dist.center();
  const double h = dist.scale();
  rule.nodes.resize(n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = c + h * t[i];
  rule.weights = std::move(w);
  rule.degree = 2 * n - 1;
  rule.dist = dist;
  rule.provenance = Provenance::gauss;
  rule.validate();
  return rule;
}

QuadratureRule clenshaw_curtis_rule(const Distribution& dist, int n) {
  if (n < 1) throw std::invalid_argument("clenshaw_curtis_rule requires n >= 1");
  if (!dist.bounded()) {
    throw std::invalid_argument("clenshaw_curtis_rule requires bounded support");
  }

  QuadratureRule rule;
  rule.dist = dist;
  rule.provenance = Provenance::clenshaw_curtis;
  const double c = dist.center();
  const double h = dist.scale();

  if (n == 1) {
    rule.nodes = {c};
    rule.weights = {1.0};
    rule.degree = 0;
    return rule;
  }

  // Chebyshev extrema, built one half at a time so mirrored nodes are exact
  // negatives and sizes 2^{k-1}+1 nest bitwise.
  std::vector<double> t(n);
  for (int k = 0; 2 * k < n - 1; ++k) {
    const double v = std::cos(static_cast<double>(k) * M_PI / static_cast<double>(n - 1));
    t[n - 1 - k] = v;
    t[k] = -v;
  }
  if (n % 2 == 1) t[(n - 1) / 2] = 0.0;

  rule.nodes.resize(n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = c + h * t[i];
  rule.weights = weights_from_nodes(dist, rule.nodes, /*relax_size_guard=*/n > 64);
  rule.degree = n - 1;
  rule.validate();
  return rule;
}

std::vector<double> weights_from_nodes(const Distribution& dist,
                                       const std::vector<double>& nodes,
                                       bool relax_size_guard) {
  const int n = static_cast<int>(nodes.size());
  if (n < 1) throw std::invalid_argument("weights_from_nodes requires at least one node");
  if (n > 64 && !relax_size_guard) {
    throw std::invalid_argument(
        "weights_from_nodes: size above the conditioning guard of 64 (set "
        "relax_size_guard to override)");
  }
  const double c = dist.center();
  const double h = dist.scale();

  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = (nodes[i] - c) / h;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (t(i) == t(j)) throw std::invalid_argument("weights_from_nodes: duplicate nodes");
    }
  }

  Eigen::MatrixXd vmat(n, n);
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) vmat(j, k) = std::pow(t(k), j);
    rhs(j) = dist.normalized_moment(j);
  }
  // row equilibration keeps the residual check meaningful for unbounded
  // supports where high powers dwarf the low-order rows
  for (int j = 0; j < n; ++j) {
    const double s = std::max(vmat.row(j).cwiseAbs().maxCoeff(), std::abs(rhs(j)));
    if (s > 0.0) {
      vmat.row(j) /= s;
      rhs(j) /= s;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vmat);
  const Eigen::MatrixXd& r = qr.matrixR();
  const double rmax = std::abs(r(0, 0));
  const double rmin = std::abs(r(n - 1, n - 1));
  if (!(rmin > 0.0)) {
    throw std::runtime_error("weights_from_nodes: singular Vandermonde system");
  }
  if (rmax / rmin > 1e13) {
    emit_warning("weights_from_nodes: condition estimate " + std::to_string(rmax / rmin) +
                 " for size " + std::to_string(n));
  }

  Eigen::VectorXd w = qr.solve(rhs);
  const double resid = (vmat * w - rhs).cwiseAbs().maxCoeff();
  if (!(resid <= 1e-9)) {
    throw std::runtime_error("weights_from_nodes: residual " + std::to_string(resid) +
                             " above tolerance");
  }
  return std::vector<double>(w.data(), w.data() + n);
}

int verify_degree(const QuadratureRule& rule) {
  const std::vector<double> t = rule.normalized_nodes();
  const int cap = rule.degree + 2;
  std::vector<double> pw(t.size(), 1.0);

  int k = -1;
  for (int j = 0; j <= cap; ++j) {
    double est = 0.0;
    for (size_t i = 0; i < t.size(); ++i) est += rule.weights[i] * pw[i];
    const double truth = rule.dist.normalized_moment(j);
    const double err = std::abs(est - truth);
    const bool ok = std::abs(truth) < 1e-2 ? err <= 1e-10 : err <= 1e-8 * std::abs(truth);
    if (!ok) break;
    k = j;
    for (size_t i = 0; i < t.size(); ++i) pw[i] *= t[i];
  }
  return k;
}

}  // namespace cq
