#include "cq/reduce1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernel_internal.hpp"

namespace cq {

namespace {

constexpr double kResidualTol = 1e-10;

Eigen::MatrixXd vandermonde_rows(const std::vector<double>& nodes, int rows) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd v(rows, n);
  for (int k = 0; k < n; ++k) {
    double p = 1.0;
    for (int j = 0; j < rows; ++j) {
      v(j, k) = p;
      p *= nodes[k];
    }
  }
  return v;
}

Eigen::VectorXd kernel_vector_checked(const Eigen::MatrixXd& m, const char* what) {
  const auto kern = detail::kernel_basis(m);
  if (kern.basis.cols() == 0) {
    throw std::runtime_error(std::string(what) +
                             ": no numerically reliable kernel (condition estimate " +
                             std::to_string(kern.sigma_max / std::max(kern.sigma_min,
                                                                      1e-300)) +
                             ")");
  }
  Eigen::VectorXd c = kern.basis.col(kern.basis.cols() - 1);
  const double resid = detail::scaled_residual(m, c);
  if (!(resid <= kResidualTol)) {
    throw std::runtime_error(std::string(what) + ": kernel residual " +
                             std::to_string(resid) + " above tolerance");
  }
  return c;
}

struct Branch {
  std::vector<double> weights;
  std::vector<int> removed;
  bool valid = false;
};

std::vector<double> standardized(const QuadratureRule& rule) {
  return rule.normalized_nodes();
}

// Mirror the standardized nodes exactly: t_i = -t_{N-1-i}, middle pinned to 0.
std::vector<double> canonical_symmetric(std::vector<double> t) {
  const int n = static_cast<int>(t.size());
  for (int i = 0; i < n / 2; ++i) {
    const double v = 0.5 * (t[n - 1 - i] - t[i]);
    t[i] = -v;
    t[n - 1 - i] = v;
  }
  if (n % 2 == 1) t[n / 2] = 0.0;
  return t;
}

Branch make_branch(const std::vector<double>& w, const Eigen::VectorXd& c, double alpha,
                   double sign) {
  const int n = static_cast<int>(w.size());
  Branch b;
  b.weights.resize(n);
  double wmax = 0.0;
  for (int k = 0; k < n; ++k) {
    b.weights[k] = w[k] + sign * alpha * c(k);
    wmax = std::max(wmax, std::abs(w[k]));
  }
  const double snap = 1e-14 * wmax;
  for (int k = 0; k < n; ++k) {
    if (std::abs(b.weights[k]) <= snap) {
      b.weights[k] = 0.0;
      b.removed.push_back(k);
    }
  }
  return b;
}

}  // namespace

void NestedFamily::validate() const {
  for (size_t i = 0; i + 1 < rules.size(); ++i) {
    const auto& big = rules[i].nodes;
    const auto& small = rules[i + 1].nodes;
    if (small.size() >= big.size()) {
      throw std::invalid_argument("family sizes must strictly decrease");
    }
    if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) {
      throw std::invalid_argument("family members must be bitwise nested");
    }
  }
  for (const auto& r : rules) {
    for (double w : r.weights) {
      if (w < 0.0) throw std::invalid_argument("family weights must be nonnegative");
    }
  }
}

const QuadratureRule& NestedFamily::by_size(int n) const {
  for (const auto& r : rules) {
    if (r.size() == n) return r;
  }
  throw std::out_of_range("nested family has no member of size " + std::to_string(n));
}

Eigen::VectorXd null_vector_asymmetric(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n < 2) throw std::invalid_argument("null_vector_asymmetric requires >= 2 nodes");
  return kernel_vector_checked(vandermonde_rows(nodes, n - 1), "null_vector_asymmetric");
}

Eigen::VectorXd null_vector_symmetric(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n < 3) throw std::invalid_argument("null_vector_symmetric requires >= 3 nodes");
  for (int i = 0; i < n / 2; ++i) {
    if (nodes[i] != -nodes[n - 1 - i]) {
      throw std::invalid_argument("null_vector_symmetric: nodes are not exactly mirrored");
    }
  }
  if (n % 2 == 1 && nodes[n / 2] != 0.0) {
    throw std::invalid_argument("null_vector_symmetric: middle node must be 0");
  }

  const int h = n / 2;
  Eigen::MatrixXd a;
  if (n % 2 == 0) {
    // rows: even powers 0, 2, ..., n-4 over the paired columns
    a.resize(h - 1, h);
    for (int k = 0; k < h; ++k) {
      const double sq = nodes[k] * nodes[k];
      double p = 2.0;
      for (int r = 0; r < h - 1; ++r) {
        a(r, k) = p;
        p *= sq;
      }
    }
  } else {
    // extra column for the middle node: (1, 0, ..., 0)
    a.resize(h, h + 1);
    for (int k = 0; k < h; ++k) {
      const double sq = nodes[k] * nodes[k];
      double p = 2.0;
      for (int r = 0; r < h; ++r) {
        a(r, k) = p;
        p *= sq;
      }
    }
    a.col(h).setZero();
    a(0, h) = 1.0;
  }

  const Eigen::VectorXd half = kernel_vector_checked(a, "null_vector_symmetric");

  Eigen::VectorXd c(n);
  for (int k = 0; k < h; ++k) {
    c(k) = half(k);
    c(n - 1 - k) = half(k);
  }
  if (n % 2 == 1) c(h) = half(h);

  const double resid = detail::scaled_residual(vandermonde_rows(nodes, n - 2), c);
  if (!(resid <= kResidualTol)) {
    throw std::runtime_error("null_vector_symmetric: expanded residual " +
                             std::to_string(resid) + " above tolerance");
  }
  return c;
}

bool is_symmetric_rule(const QuadratureRule& rule) {
  const auto center = rule.dist.symmetry_center();
  if (!center) return false;
  const int n = rule.size();
  const std::vector<double>& x = rule.nodes;
  double width = rule.dist.bounded() ? rule.dist.upper() - rule.dist.lower()
                                     : 2.0 * rule.dist.scale();
  width = std::max(width, x.back() - x.front());
  for (int i = 0; i <= (n - 1) / 2; ++i) {
    if (std::abs((x[i] - *center) + (x[n - 1 - i] - *center)) > 1e-12 * width) return false;
  }
  return true;
}

int select_branch(const std::vector<double>& w1, const std::vector<double>& w2,
                  const ReductionCriterion& criterion, const QuadratureRule& rule) {
  if (criterion.kind == CriterionKind::explicit_choice) {
    return criterion.explicit_branch == 2 ? 2 : 1;
  }

  auto removed_of = [](const std::vector<double>& w) {
    std::vector<int> r;
    for (size_t k = 0; k < w.size(); ++k) {
      if (w[k] == 0.0) r.push_back(static_cast<int>(k));
    }
    return r;
  };
  const std::vector<int> r1 = removed_of(w1);
  const std::vector<int> r2 = removed_of(w2);

  if (criterion.kind == CriterionKind::weight) {
    auto spread = [&](const std::vector<double>& w) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (double v : w) {
        if (v == 0.0) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return hi - lo;
    };
    const double s1 = spread(w1), s2 = spread(w2);
    return s2 < s1 ? 2 : 1;
  }

  // prior criterion: remove the branch whose dropped node has lower density
  auto min_pdf = [&](const std::vector<int>& r) {
    double p = std::numeric_limits<double>::infinity();
    for (int k : r) p = std::min(p, rule.dist.pdf(rule.nodes[k]));
    return p;
  };
  const double p1 = min_pdf(r1), p2 = min_pdf(r2);
  if (std::abs(p1 - p2) > 1e-12) return p1 < p2 ? 1 : 2;

  // density tie: remove the node farthest from the symmetry center
  const auto center = rule.dist.symmetry_center();
  if (center) {
    auto max_dist = [&](const std::vector<int>& r) {
      double d = 0.0;
      for (int k : r) d = std::max(d, std::abs(rule.nodes[k] - *center));
      return d;
    };
    const double d1 = max_dist(r1), d2 = max_dist(r2);
    if (d1 != d2) return d1 > d2 ? 1 : 2;
  }
  return 1;
}

QuadratureRule reduction_step(const QuadratureRule& rule, const ReductionCriterion& criterion) {
  const int n = rule.size();
  if (n < 2) throw std::invalid_argument("reduction_step requires >= 2 nodes");
  for (double w : rule.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("reduction_step requires positive weights");
  }

  const bool symmetric = n >= 3 && is_symmetric_rule(rule);
  Eigen::VectorXd c;
  if (symmetric) {
    c = null_vector_symmetric(canonical_symmetric(standardized(rule)));
  } else {
    c = null_vector_asymmetric(standardized(rule));
  }

  const double ctol = 1e-14 * c.cwiseAbs().maxCoeff();
  double a1 = std::numeric_limits<double>::infinity();
  double a2 = -std::numeric_limits<double>::infinity();
  bool has_pos = false, has_neg = false;
  for (int k = 0; k < n; ++k) {
    if (c(k) > ctol) {
      has_pos = true;
      a1 = std::min(a1, rule.weights[k] / c(k));
    } else if (c(k) < -ctol) {
      has_neg = true;
      a2 = std::max(a2, -rule.weights[k] / c(k));
    }
  }

  const int required = symmetric ? 2 : 1;
  Branch b1, b2;
  if (has_pos) {
    b1 = make_branch(rule.weights, c, a1, -1.0);
    b1.valid = static_cast<int>(b1.removed.size()) >= required;
  }
  if (has_neg) {
    b2 = make_branch(rule.weights, c, a2, +1.0);
    b2.valid = static_cast<int>(b2.removed.size()) >= required;
  }

  const Branch* pick = nullptr;
  if (b1.valid && b2.valid) {
    pick = select_branch(b1.weights, b2.weights, criterion, rule) == 1 ? &b1 : &b2;
  } else if (b1.valid) {
    pick = &b1;
  } else if (b2.valid) {
    pick = &b2;
  } else {
    throw ReductionExhausted(
        "reduction_step: neither branch removes the required number of nodes");
  }

  QuadratureRule out;
  out.dist = rule.dist;
  out.provenance = Provenance::reduced;
  out.degree = n - (symmetric ? 3 : 2);
  for (int k = 0; k < n; ++k) {
    if (pick->weights[k] != 0.0) {
      if (pick->weights[k] < -1e-13) {
        throw std::runtime_error("reduction_step: surviving weight went negative");
      }
      out.nodes.push_back(rule.nodes[k]);
      out.weights.push_back(pick->weights[k]);
    }
  }
  if (out.nodes.empty()) {
    throw ReductionExhausted("reduction_step: all weights vanished");
  }
  return out;
}

NestedFamily nested_family(const QuadratureRule& rule, const ReductionCriterion& criterion) {
  for (double w : rule.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("nested_family requires a positive rule");
  }
  NestedFamily family;
  family.rules.push_back(rule);
  while (family.rules.back().size() > 1) {
    family.rules.push_back(reduction_step(family.rules.back(), criterion));
  }
  family.validate();
  return family;
}

}  // namespace cq
