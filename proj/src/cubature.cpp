#include "cq/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "kernel_internal.hpp"

namespace cq {

namespace {

constexpr double kSnapTol = 1e-12;  // standardized-coordinate coincidence tolerance

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::int64_t distinct_permutations(const std::vector<double>& sorted_vals) {
  std::int64_t f = factorial(static_cast<int>(sorted_vals.size()));
  size_t i = 0;
  while (i < sorted_vals.size()) {
    size_t j = i;
    while (j < sorted_vals.size() && sorted_vals[j] == sorted_vals[i]) ++j;
    f /= factorial(static_cast<int>(j - i));
    i = j;
  }
  return f;
}

int nonzero_count(const std::vector<double>& v) {
  int c = 0;
  for (double x : v) c += (x != 0.0);
  return c;
}

double power(double base, int e) {
  double p = 1.0;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

}  // namespace

std::string to_string(CubProvenance p) {
  switch (p) {
    case CubProvenance::tensor: return "tensor";
    case CubProvenance::smolyak: return "smolyak";
    case CubProvenance::reduced: return "reduced";
    case CubProvenance::symmetric_reduced: return "symmetric_reduced";
    case CubProvenance::negative_symmetric_reduced: return "negative_symmetric_reduced";
  }
  return "unknown";
}

CubProvenance cub_provenance_from_string(const std::string& s) {
  if (s == "tensor") return CubProvenance::tensor;
  if (s == "smolyak") return CubProvenance::smolyak;
  if (s == "reduced") return CubProvenance::reduced;
  if (s == "symmetric_reduced") return CubProvenance::symmetric_reduced;
  if (s == "negative_symmetric_reduced") return CubProvenance::negative_symmetric_reduced;
  throw std::invalid_argument("unknown cubature provenance tag: " + s);
}

Eigen::MatrixXd CubatureRule::standardized_nodes() const {
  const int n = size();
  const int d = dim();
  Eigen::MatrixXd t(n, d);
  for (int a = 0; a < d; ++a) {
    const double c = axes[a].center();
    const double h = axes[a].scale();
    for (int i = 0; i < n; ++i) t(i, a) = (nodes(i, a) - c) / h;
  }

  // Cluster magnitudes across the whole rule so that mirrored and permuted
  // coordinates compare bitwise after snapping.
  std::vector<double> mags;
  mags.reserve(static_cast<size_t>(n) * d);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) mags.push_back(std::abs(t(i, a)));
  }
  std::sort(mags.begin(), mags.end());
  std::vector<std::pair<double, double>> clusters;  // (upper bound, canonical)
  size_t i0 = 0;
  while (i0 < mags.size()) {
    size_t j = i0;
    while (j + 1 < mags.size() && mags[j + 1] - mags[j] <= kSnapTol) ++j;
    double canon = mags[i0 + (j - i0) / 2];
    if (mags[i0] <= kSnapTol) canon = 0.0;
    clusters.emplace_back(mags[j], canon);
    i0 = j + 1;
  }
  auto snap = [&clusters](double v) {
    const double m = std::abs(v);
    auto it = std::lower_bound(clusters.begin(), clusters.end(), m,
                               [](const std::pair<double, double>& cl, double x) {
                                 return cl.first < x;
                               });
    const double canon = it != clusters.end() ? it->second : clusters.back().second;
    return v < 0.0 ? -canon : canon;
  };
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) t(i, a) = snap(t(i, a));
  }
  return t;
}

double CubatureRule::integrate(
    const std::function<double(const Eigen::RowVectorXd&)>& f) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += weights(i) * f(nodes.row(i));
  return s;
}

void CubatureRule::validate() const {
  if (axes.empty() || nodes.rows() != weights.size() ||
      nodes.cols() != static_cast<Eigen::Index>(axes.size())) {
    throw std::invalid_argument("cubature rule has inconsistent shapes");
  }
  const double sum = weights.sum();
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("cubature weights must sum to 1");
  }
  // exact duplicate detection via lexicographic sort
  std::vector<int> order(size());
  for (int i = 0; i < size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int c = 0; c < dim(); ++c) {
      if (nodes(a, c) != nodes(b, c)) return nodes(a, c) < nodes(b, c);
    }
    return false;
  });
  for (size_t k = 0; k + 1 < order.size(); ++k) {
    if (nodes.row(order[k]) == nodes.row(order[k + 1])) {
      throw std::invalid_argument("cubature rule contains duplicate nodes");
    }
  }
}

OrbitPartition orbit_partition(const Eigen::MatrixXd& t) {
  const int n = static_cast<int>(t.rows());
  const int d = static_cast<int>(t.cols());
  OrbitPartition part;
  part.orbit_of.assign(n, -1);
  part.on_type1_plane.assign(n, false);
  part.on_type2_plane.assign(n, false);

  std::map<std::vector<double>, int> rep_to_orbit;
  for (int i = 0; i < n; ++i) {
    std::vector<double> rep(d);
    for (int a = 0; a < d; ++a) rep[a] = std::abs(t(i, a));
    std::sort(rep.begin(), rep.end());

    part.on_type1_plane[i] = rep[0] == 0.0;
    for (int a = 0; a + 1 < d; ++a) {
      if (rep[a] == rep[a + 1]) {
        part.on_type2_plane[i] = true;
        break;
      }
    }

    auto [it, inserted] = rep_to_orbit.try_emplace(rep, static_cast<int>(part.orbits.size()));
    if (inserted) {
      OrbitPartition::Orbit orb;
      orb.representative = rep;
      orb.expected_size = (std::int64_t{1} << nonzero_count(rep)) * distinct_permutations(rep);
      part.orbits.push_back(std::move(orb));
    }
    part.orbits[it->second].members.push_back(i);
    part.orbit_of[i] = it->second;
  }
  return part;
}

namespace {

struct RowLess {
  bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

std::map<std::vector<double>, int, RowLess> node_index(const Eigen::MatrixXd& t) {
  std::map<std::vector<double>, int, RowLess> idx;
  for (int i = 0; i < t.rows(); ++i) {
    std::vector<double> row(t.cols());
    for (int a = 0; a < t.cols(); ++a) row[a] = t(i, a);
    idx.emplace(std::move(row), i);
  }
  return idx;
}

}  // namespace

bool is_type1_symmetric(const Eigen::MatrixXd& t) {
  const auto idx = node_index(t);
  for (int i = 0; i < t.rows(); ++i) {
    for (int a = 0; a < t.cols(); ++a) {
      if (t(i, a) == 0.0) continue;
      std::vector<double> row(t.cols());
      for (int c = 0; c < t.cols(); ++c) row[c] = t(i, c);
      row[a] = -row[a];
      if (!idx.count(row)) return false;
    }
  }
  return true;
}

bool is_type2_symmetric(const Eigen::MatrixXd& t) {
  const auto idx = node_index(t);
  for (int i = 0; i < t.rows(); ++i) {
    for (int a = 0; a + 1 < t.cols(); ++a) {
      std::vector<double> row(t.cols());
      for (int c = 0; c < t.cols(); ++c) row[c] = t(i, c);
      std::swap(row[a], row[a + 1]);
      if (!idx.count(row)) return false;
    }
  }
  return true;
}

CubatureRule tensor_rule(const std::vector<QuadratureRule>& axis_rules) {
  if (axis_rules.empty()) throw std::invalid_argument("tensor_rule requires >= 1 axis");
  const int d = static_cast<int>(axis_rules.size());
  std::int64_t n = 1;
  int degree = std::numeric_limits<int>::max();
  for (const auto& r : axis_rules) {
    r.validate();
    n *= r.size();
    degree = std::min(degree, r.degree);
    if (n > 50'000'000) throw std::invalid_argument("tensor_rule: grid too large");
  }

  CubatureRule rule;
  rule.axes.reserve(d);
  for (const auto& r : axis_rules) rule.axes.push_back(r.dist);
  rule.nodes.resize(n, d);
  rule.weights.resize(n);
  rule.degree = degree;
  rule.provenance = CubProvenance::tensor;

  std::vector<int> counter(d, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      rule.nodes(i, a) = axis_rules[a].nodes[counter[a]];
      w *= axis_rules[a].weights[counter[a]];
    }
    rule.weights(i) = w;
    for (int a = d - 1; a >= 0; --a) {  // last axis fastest
      if (++counter[a] < axis_rules[a].size()) break;
      counter[a] = 0;
    }
  }
  return rule;
}

Eigen::MatrixXd collapsed_matrix_type1(const Eigen::MatrixXd& reps, int k) {
  const int d = static_cast<int>(reps.cols());
  const auto half = MultiIndexSet::total_degree(k / 2, d);
  Eigen::MatrixXd g(half.size(), reps.rows());
  for (int j = 0; j < reps.rows(); ++j) {
    int nnz = 0;
    for (int a = 0; a < d; ++a) nnz += (reps(j, a) != 0.0);
    const double mult = static_cast<double>(std::int64_t{1} << nnz);
    for (size_t r = 0; r < half.size(); ++r) {
      double val = 1.0;
      for (int a = 0; a < d; ++a) val *= power(reps(j, a), 2 * half.indices()[r][a]);
      g(static_cast<Eigen::Index>(r), j) = mult * val;
    }
  }
  return g;
}

Eigen::MatrixXd collapsed_matrix_type12(const Eigen::MatrixXd& reps, int k, bool even_rows) {
  const int d = static_cast<int>(reps.cols());
  const auto rows = even_rows ? sorted_multi_indices(k / 2, d) : sorted_multi_indices(k, d);
  Eigen::MatrixXd g(rows.size(), reps.rows());
  for (int j = 0; j < reps.rows(); ++j) {
    std::vector<double> rep(d);
    for (int a = 0; a < d; ++a) rep[a] = reps(j, a);
    std::sort(rep.begin(), rep.end());
    double mult = 1.0;
    if (even_rows) {
      int nnz = 0;
      for (double v : rep) nnz += (v != 0.0);
      mult = static_cast<double>(std::int64_t{1} << nnz);
    }
    for (size_t r = 0; r < rows.size(); ++r) {
      double sum = 0.0;
      std::vector<double> perm = rep;
      do {
        double val = 1.0;
        for (int a = 0; a < d; ++a) {
          const int e = even_rows ? 2 * rows[r][a] : rows[r][a];
          val *= power(perm[a], e);
        }
        sum += val;
      } while (std::next_permutation(perm.begin(), perm.end()));
      g(static_cast<Eigen::Index>(r), j) = mult * sum;
    }
  }
  return g;
}

namespace {

// Shared scaffolding for the Caratheodory elimination loops. `columns` is
// either one node or one orbit per entry; weights are per-node values.
struct ExchangeState {
  std::vector<int> live;             // surviving column ids
  Eigen::VectorXd weight;            // per-node weight value, indexed by column id
  std::vector<double> column_pdf;    // product density at a representative node
  std::vector<double> column_dist;   // distance from center, for tie-breaks
  std::vector<std::int64_t> column_count;  // nodes per column (1 for node-level)
};

struct Candidate {
  Eigen::VectorXd w;          // updated weights over live positions
  std::vector<int> removed;   // positions in `live` snapped to zero
  bool valid = false;
};

Candidate apply_alpha(const ExchangeState& st, const Eigen::VectorXd& c, double alpha,
                      double sign) {
  Candidate cand;
  const int m = static_cast<int>(st.live.size());
  cand.w.resize(m);
  double wmax = 0.0;
  for (int k = 0; k < m; ++k) wmax = std::max(wmax, std::abs(st.weight(st.live[k])));
  const double snap = 1e-14 * wmax;
  for (int k = 0; k < m; ++k) {
    double v = st.weight(st.live[k]) + sign * alpha * c(k);
    if (std::abs(v) <= snap) {
      v = 0.0;
      cand.removed.push_back(k);
    }
    cand.w(k) = v;
  }
  cand.valid = !cand.removed.empty();
  return cand;
}

int choose_candidate(const ExchangeState& st, const Candidate& c1, const Candidate& c2,
                     const ReductionCriterion& crit) {
  if (crit.kind == CriterionKind::explicit_choice) return crit.explicit_branch == 2 ? 2 : 1;
  if (crit.kind == CriterionKind::weight) {
    auto spread = [](const Candidate& c) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int k = 0; k < c.w.size(); ++k) {
        if (c.w(k) == 0.0) continue;
        lo = std::min(lo, c.w(k));
        hi = std::max(hi, c.w(k));
      }
      return hi - lo;
    };
    return spread(c2) < spread(c1) ? 2 : 1;
  }
  // prior criterion
  auto min_pdf = [&](const Candidate& c) {
    double p = std::numeric_limits<double>::infinity();
    for (int k : c.removed) p = std::min(p, st.column_pdf[st.live[k]]);
    return p;
  };
  const double p1 = min_pdf(c1), p2 = min_pdf(c2);
  if (std::abs(p1 - p2) > 1e-12) return p1 < p2 ? 1 : 2;
  auto max_dist = [&](const Candidate& c) {
    double v = 0.0;
    for (int k : c.removed) v = std::max(v, st.column_dist[st.live[k]]);
    return v;
  };
  const double d1 = max_dist(c1), d2 = max_dist(c2);
  if (d1 != d2) return d1 > d2 ? 1 : 2;
  return 1;
}

// Runs Caratheodory exchanges against kernels of `matrix_for(live)` until the
// kernel is exhausted. Positive mode keeps weights nonnegative and applies the
// branch criterion; gamma mode removes the largest column in the kernel
// support and may drive weights negative.
void exchange_loop(ExchangeState& st,
                   const std::function<Eigen::MatrixXd(const std::vector<int>&)>& matrix_for,
                   const ReductionCriterion& crit, bool gamma_mode) {
  while (st.live.size() > 1) {
    const Eigen::MatrixXd g = matrix_for(st.live);
    auto kern = detail::kernel_basis(g);
    if (kern.basis.cols() == 0) break;

    Eigen::MatrixXd basis = kern.basis;
    bool shrank = false;
    for (Eigen::Index vi = 0; vi < basis.cols(); ++vi) {
      Eigen::VectorXd c = basis.col(vi);
      const double cmax = c.cwiseAbs().maxCoeff();
      if (!(cmax > 1e-12)) continue;
      const double ctol = 1e-12 * cmax;

      std::vector<int> dead;
      int pivot = -1;
      if (gamma_mode) {
        std::int64_t gamma = -1;
        for (int k = 0; k < static_cast<int>(st.live.size()); ++k) {
          if (std::abs(c(k)) <= ctol) continue;
          if (st.column_count[st.live[k]] > gamma) {
            gamma = st.column_count[st.live[k]];
            pivot = k;
          }
        }
        if (pivot < 0) continue;
        const double alpha = st.weight(st.live[pivot]) / c(pivot);
        Candidate cand = apply_alpha(st, c, alpha, -1.0);
        cand.w(pivot) = 0.0;  // eliminated by construction
        if (std::find(cand.removed.begin(), cand.removed.end(), pivot) == cand.removed.end()) {
          cand.removed.push_back(pivot);
        }
        for (int k = 0; k < static_cast<int>(st.live.size()); ++k) {
          st.weight(st.live[k]) = cand.w(k);
        }
        dead = cand.removed;
      } else {
        double a1 = std::numeric_limits<double>::infinity();
        double a2 = -std::numeric_limits<double>::infinity();
        bool has_pos = false, has_neg = false;
        for (int k = 0; k < static_cast<int>(st.live.size()); ++k) {
          const double w = st.weight(st.live[k]);
          if (c(k) > ctol) {
            has_pos = true;
            a1 = std::min(a1, w / c(k));
          } else if (c(k) < -ctol) {
            has_neg = true;
            a2 = std::max(a2, -w / c(k));
          }
        }
        Candidate c1, c2;
        if (has_pos) c1 = apply_alpha(st, c, a1, -1.0);
        if (has_neg) c2 = apply_alpha(st, c, a2, +1.0);
        const Candidate* pick = nullptr;
        if (c1.valid && c2.valid) {
          pick = choose_candidate(st, c1, c2, crit) == 1 ? &c1 : &c2;
        } else if (c1.valid) {
          pick = &c1;
        } else if (c2.valid) {
          pick = &c2;
        } else {
          continue;
        }
        for (int k = 0; k < static_cast<int>(st.live.size()); ++k) {
          st.weight(st.live[k]) = pick->w(k);
        }
        dead = pick->removed;
        pivot = dead.front();
      }

      if (dead.empty()) continue;
      shrank = true;
      if (dead.size() > 1) break;  // tie: recompute the kernel on the new live set

      // Gaussian elimination of the pivot coordinate from the remaining vectors.
      const int k0 = pivot;
      for (Eigen::Index vj = vi + 1; vj < basis.cols(); ++vj) {
        if (basis(k0, vi) != 0.0) {
          basis.col(vj) -= basis.col(vi) * (basis(k0, vj) / basis(k0, vi));
        }
      }
    }

    // drop zero-weight columns from the live set
    std::vector<int> still;
    still.reserve(st.live.size());
    for (int id : st.live) {
      if (st.weight(id) != 0.0) still.push_back(id);
    }
    if (still.size() == st.live.size() && !shrank) break;
    st.live.swap(still);
  }
}

CubatureRule build_result(const CubatureRule& parent, const std::vector<int>& node_ids,
                          const Eigen::VectorXd& node_weight, int degree,
                          CubProvenance prov) {
  CubatureRule out;
  out.axes = parent.axes;
  out.degree = degree;
  out.provenance = prov;
  out.nodes.resize(node_ids.size(), parent.dim());
  out.weights.resize(node_ids.size());
  for (size_t i = 0; i < node_ids.size(); ++i) {
    out.nodes.row(i) = parent.nodes.row(node_ids[i]);
    out.weights(i) = node_weight(node_ids[i]);
  }
  return out;
}

double product_pdf(const CubatureRule& rule, int node) {
  double p = 1.0;
  for (int a = 0; a < rule.dim(); ++a) p *= rule.axes[a].pdf(rule.nodes(node, a));
  return p;
}

}  // namespace

CubatureRule reduce_step_general(const CubatureRule& rule, int target_degree,
                                 const ReductionCriterion& criterion) {
  rule.validate();
  if (rule.weights.minCoeff() <= 0.0) {
    throw std::invalid_argument("reduce_step_general requires positive weights");
  }
  const int n = rule.size();
  const int d = rule.dim();
  const Eigen::MatrixXd t = rule.standardized_nodes();
  const auto mset = MultiIndexSet::total_degree(target_degree, d);

  // per-node power tables
  std::vector<Eigen::MatrixXd> pw(n, Eigen::MatrixXd(d, target_degree + 1));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) {
      double p = 1.0;
      for (int e = 0; e <= target_degree; ++e) {
        pw[i](a, e) = p;
        p *= t(i, a);
      }
    }
  }

  ExchangeState st;
  st.live.resize(n);
  for (int i = 0; i < n; ++i) st.live[i] = i;
  st.weight = rule.weights;
  st.column_pdf.resize(n);
  st.column_dist.resize(n);
  st.column_count.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    st.column_pdf[i] = product_pdf(rule, i);
    st.column_dist[i] = t.row(i).norm();
  }

  auto matrix_for = [&](const std::vector<int>& live) {
    Eigen::MatrixXd g(mset.size(), live.size());
    for (size_t k = 0; k < live.size(); ++k) {
      for (size_t r = 0; r < mset.size(); ++r) {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= pw[live[k]](a, mset.indices()[r][a]);
        g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = v;
      }
    }
    return g;
  };

  exchange_loop(st, matrix_for, criterion, /*gamma_mode=*/false);

  if (static_cast<int>(st.live.size()) == n) {
    throw ReductionExhausted("reduce_step_general: no removable node (empty kernel)");
  }
  CubatureRule out =
      build_result(rule, st.live, st.weight, target_degree, CubProvenance::reduced);
  if (out.weights.minCoeff() < -1e-13) {
    throw std::runtime_error("reduce_step_general: weight positivity lost");
  }
  return out;
}

namespace {

struct OrbitTable {
  Eigen::MatrixXd reps;                // R x d sorted magnitudes
  std::vector<std::int64_t> sizes;     // member counts
  std::vector<std::vector<int>> members;
};

OrbitTable orbit_table(const CubatureRule& rule, const Eigen::MatrixXd& t,
                       Eigen::VectorXd& orbit_weight) {
  const auto part = orbit_partition(t);
  for (const auto& orb : part.orbits) {
    if (static_cast<std::int64_t>(orb.members.size()) != orb.expected_size) {
      throw std::invalid_argument(
          "symmetric reduction requires a type-1 and type-2 symmetric node set");
    }
  }
  const int r = static_cast<int>(part.orbits.size());
  const int d = rule.dim();
  OrbitTable tab;
  tab.reps.resize(r, d);
  tab.sizes.resize(r);
  tab.members.resize(r);
  orbit_weight.resize(r);
  for (int q = 0; q < r; ++q) {
    const auto& orb = part.orbits[q];
    for (int a = 0; a < d; ++a) tab.reps(q, a) = orb.representative[a];
    tab.sizes[q] = static_cast<std::int64_t>(orb.members.size());
    tab.members[q] = orb.members;
    double mean = 0.0, lo = rule.weights(orb.members[0]), hi = lo;
    for (int i : orb.members) {
      mean += rule.weights(i);
      lo = std::min(lo, rule.weights(i));
      hi = std::max(hi, rule.weights(i));
    }
    mean /= static_cast<double>(orb.members.size());
    if (hi - lo > 1e-12 * std::max(1.0, std::abs(mean))) {
      throw std::invalid_argument("symmetric reduction requires orbit-constant weights");
    }
    orbit_weight(q) = mean;
  }
  return tab;
}

CubatureRule symmetric_driver(const CubatureRule& rule, int target_degree,
                              const ReductionCriterion& criterion, bool gamma_mode) {
  rule.validate();
  const Eigen::MatrixXd t = rule.standardized_nodes();
  if (!is_type1_symmetric(t) || !is_type2_symmetric(t)) {
    throw std::invalid_argument(
        "symmetric reduction requires a type-1 and type-2 symmetric node set");
  }
  Eigen::VectorXd orbit_weight;
  OrbitTable tab = orbit_table(rule, t, orbit_weight);
  const int r = static_cast<int>(tab.sizes.size());

  ExchangeState st;
  st.live.resize(r);
  for (int q = 0; q < r; ++q) st.live[q] = q;
  st.weight = orbit_weight;
  st.column_pdf.resize(r);
  st.column_dist.resize(r);
  st.column_count = tab.sizes;
  for (int q = 0; q < r; ++q) {
    st.column_pdf[q] = product_pdf(rule, tab.members[q].front());
    st.column_dist[q] = tab.reps.row(q).norm();
  }

  auto matrix_for = [&](const std::vector<int>& live) {
    Eigen::MatrixXd reps(live.size(), rule.dim());
    for (size_t k = 0; k < live.size(); ++k) reps.row(k) = tab.reps.row(live[k]);
    return collapsed_matrix_type12(reps, target_degree, /*even_rows=*/true);
  };

  exchange_loop(st, matrix_for, criterion, gamma_mode);

  if (static_cast<int>(st.live.size()) == r && !gamma_mode) {
    throw ReductionExhausted("reduce_step_symmetric: no symmetric kernel, reduction exhausted");
  }

  std::vector<int> node_ids;
  Eigen::VectorXd node_weight = Eigen::VectorXd::Zero(rule.size());
  for (int q : st.live) {
    for (int i : tab.members[q]) {
      node_ids.push_back(i);
      node_weight(i) = st.weight(q);
    }
  }
  std::sort(node_ids.begin(), node_ids.end());
  CubatureRule out = build_result(rule, node_ids, node_weight, target_degree,
                                  gamma_mode ? CubProvenance::negative_symmetric_reduced
                                             : CubProvenance::symmetric_reduced);
  if (!gamma_mode && out.weights.minCoeff() < -1e-13) {
    throw std::runtime_error("reduce_step_symmetric: weight positivity lost");
  }
  return out;
}

}  // namespace

CubatureRule reduce_step_symmetric(const CubatureRule& rule, int target_degree,
                                   const ReductionCriterion& criterion) {
  if (rule.weights.minCoeff() <= 0.0) {
    throw std::invalid_argument("reduce_step_symmetric requires positive weights");
  }
  return symmetric_driver(rule, target_degree, criterion, /*gamma_mode=*/false);
}

CubatureRule reduce_step_negative(const CubatureRule& rule, int target_degree) {
  return symmetric_driver(rule, target_degree, ReductionCriterion{}, /*gamma_mode=*/true);
}

int verify_degree(const CubatureRule& rule, int cap) {
  const int d = rule.dim();
  const int n = rule.size();
  const Eigen::MatrixXd t = rule.standardized_nodes();

  std::vector<Eigen::MatrixXd> pw(n, Eigen::MatrixXd(d, cap + 1));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) {
      double p = 1.0;
      for (int e = 0; e <= cap; ++e) {
        pw[i](a, e) = p;
        p *= t(i, a);
      }
    }
  }

  auto audit_one = [&](const std::vector<int>& alpha) {
    double truth = 1.0;
    for (int a = 0; a < d; ++a) truth *= rule.axes[a].normalized_moment(alpha[a]);
    double est = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = rule.weights(i);
      for (int a = 0; a < d; ++a) v *= pw[i](a, alpha[a]);
      est += v;
    }
    const double err = std::abs(est - truth);
    return std::abs(truth) < 1e-2 ? err <= 1e-10 : err <= 1e-8 * std::abs(truth);
  };

  const std::int64_t full = dim_poly(cap, d);
  if (full <= 20000) {
    const auto mset = MultiIndexSet::total_degree(cap, d);
    int best = -1;
    int degree = 0;
    bool failed = false;
    for (const auto& alpha : mset.indices()) {
      int total = 0;
      for (int e : alpha) total += e;
      if (total > degree) {
        if (failed) break;
        best = degree;
        degree = total;
      }
      if (!audit_one(alpha)) failed = true;
    }
    if (!failed) best = degree;
    return best;
  }

  // randomized audit with a fixed seed
  std::mt19937_64 gen(0x5eed5eedULL);
  std::uniform_int_distribution<int> pick(0, cap);
  int worst_fail = cap + 1;
  for (int s = 0; s < 20000; ++s) {
    std::vector<int> alpha(d);
    int total = 0;
    for (int a = 0; a < d; ++a) {
      alpha[a] = pick(gen);
      total += alpha[a];
    }
    if (total > cap || total >= worst_fail) continue;
    if (!audit_one(alpha)) worst_fail = total;
  }
  return worst_fail - 1;
}

}  // namespace cq
