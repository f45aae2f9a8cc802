#include "cq/smolyak.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cq {

int level_size(int k) {
  if (k < 1) throw std::invalid_argument("level index must be >= 1");
  return k == 1 ? 1 : (1 << (k - 1)) + 1;
}

QuadratureRule ClenshawCurtisFamily::level_rule(int level) const {
  return clenshaw_curtis_rule(dist_, level_size(level));
}

QuadratureRule GaussFamily::level_rule(int level) const {
  return gauss_rule(dist_, level_size(level));
}

ReducedFamily::ReducedFamily(NestedFamily family) : family_(std::move(family)) {
  if (family_.rules.empty()) throw std::invalid_argument("empty reduction family");
  family_.validate();
}

QuadratureRule ReducedFamily::level_rule(int level) const {
  const int n = level_size(level);
  try {
    return family_.by_size(n);
  } catch (const std::out_of_range&) {
    throw std::out_of_range("reduction family has no member of size " + std::to_string(n) +
                            " required for level " + std::to_string(level));
  }
}

const Distribution& ReducedFamily::distribution() const {
  return family_.rules.front().dist;
}

namespace {

std::int64_t binom_small(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Snaps per-axis standardized values so that coincident nodes from non-nested
// families compare bitwise: values are clustered per axis within 1e-12.
class AxisSnapper {
 public:
  void add(int axis, double value) { values_[axis].push_back(value); }

  void finalize() {
    for (auto& [axis, vals] : values_) {
      std::sort(vals.begin(), vals.end());
      auto& cl = clusters_[axis];
      size_t i = 0;
      while (i < vals.size()) {
        size_t j = i;
        while (j + 1 < vals.size() && vals[j + 1] - vals[j] <= 1e-12) ++j;
        cl.emplace_back(vals[j], vals[i + (j - i) / 2]);
        i = j + 1;
      }
    }
  }

  double snap(int axis, double value) const {
    const auto& cl = clusters_.at(axis);
    auto it = std::lower_bound(cl.begin(), cl.end(), value,
                               [](const std::pair<double, double>& c, double x) {
                                 return c.first < x;
                               });
    return it != cl.end() ? it->second : cl.back().second;
  }

 private:
  std::map<int, std::vector<double>> values_;
  std::map<int, std::vector<std::pair<double, double>>> clusters_;
};

}  // namespace

SmolyakResult smolyak_rule(const std::vector<const QuadratureFamily*>& axes, int k) {
  const int d = static_cast<int>(axes.size());
  if (d < 1) throw std::invalid_argument("smolyak_rule requires >= 1 axis");
  if (k < d) throw std::invalid_argument("smolyak_rule requires K >= d");

  bool all_nested = true;
  for (const auto* f : axes) all_nested = all_nested && f->nested();

  // cache per-axis rules for the levels in play (level <= K-d+1)
  const int max_level = k - d + 1;
  std::vector<std::vector<QuadratureRule>> cache(d);
  for (int a = 0; a < d; ++a) {
    cache[a].reserve(max_level);
    for (int lvl = 1; lvl <= max_level; ++lvl) cache[a].push_back(axes[a]->level_rule(lvl));
  }

  // standardized per-axis coordinates, snapped for the non-nested case
  std::vector<std::vector<std::vector<double>>> coord(d);  // [axis][level-1][node]
  std::vector<std::vector<std::vector<double>>> physical(d);
  AxisSnapper snapper;
  for (int a = 0; a < d; ++a) {
    coord[a].resize(max_level);
    physical[a].resize(max_level);
    for (int lvl = 0; lvl < max_level; ++lvl) {
      coord[a][lvl] = cache[a][lvl].normalized_nodes();
      physical[a][lvl] = cache[a][lvl].nodes;
      if (!all_nested) {
        for (double v : coord[a][lvl]) snapper.add(a, v);
      }
    }
  }
  if (!all_nested) {
    snapper.finalize();
    for (int a = 0; a < d; ++a) {
      for (auto& lvl : coord[a]) {
        for (double& v : lvl) v = snapper.snap(a, v);
      }
    }
  }

  struct Entry {
    double weight = 0.0;
    std::vector<double> physical;
  };
  std::map<std::vector<double>, Entry> merged;

  // enumerate alpha in N_+^d with K-d+1 <= |alpha| <= K
  std::vector<int> alpha(d, 1);
  auto term = [&](const std::vector<int>& a_vec) {
    int sum = 0;
    for (int v : a_vec) sum += v;
    const double coeff = ((k - sum) % 2 == 0 ? 1.0 : -1.0) *
                         static_cast<double>(binom_small(d - 1, k - sum));
    std::vector<int> counter(d, 0);
    std::vector<double> key(d), phys(d);
    while (true) {
      double w = coeff;
      for (int a = 0; a < d; ++a) {
        const int lvl = a_vec[a] - 1;
        key[a] = coord[a][lvl][counter[a]];
        phys[a] = physical[a][lvl][counter[a]];
        w *= cache[a][lvl].weights[counter[a]];
      }
      auto& entry = merged[key];
      if (entry.physical.empty()) entry.physical = phys;
      entry.weight += w;
      int ax = d - 1;
      for (; ax >= 0; --ax) {
        if (++counter[ax] < cache[ax][a_vec[ax] - 1].size()) break;
        counter[ax] = 0;
      }
      if (ax < 0) break;
    }
  };

  // iterate compositions: alpha >= 1 with bounded sum
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == d - 1) {
      for (int v = 1; v <= remaining; ++v) {
        alpha[pos] = v;
        int sum = 0;
        for (int q : alpha) sum += q;
        if (sum >= k - d + 1 && sum <= k) term(alpha);
      }
      return;
    }
    for (int v = 1; v <= remaining - (d - 1 - pos); ++v) {
      alpha[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, k);

  SmolyakResult result;
  CubatureRule& rule = result.rule;
  rule.axes.reserve(d);
  for (const auto* f : axes) rule.axes.push_back(f->distribution());
  rule.degree = 2 * (k - d) + 1;
  rule.provenance = CubProvenance::smolyak;

  std::vector<const Entry*> kept;
  kept.reserve(merged.size());
  for (const auto& [key, entry] : merged) {
    if (std::abs(entry.weight) <= 1e-14) {
      ++result.dropped_zero_weight_nodes;
    } else {
      kept.push_back(&entry);
    }
  }
  rule.nodes.resize(kept.size(), d);
  rule.weights.resize(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    for (int a = 0; a < d; ++a) rule.nodes(static_cast<Eigen::Index>(i), a) = kept[i]->physical[a];
    rule.weights(static_cast<Eigen::Index>(i)) = kept[i]->weight;
  }
  rule.validate();
  return result;
}

SmolyakResult smolyak_rule(const QuadratureFamily& family, int k, int d) {
  std::vector<const QuadratureFamily*> axes(d, &family);
  return smolyak_rule(axes, k);
}

bool smolyak_degree_check(const CubatureRule& rule, int k, int d) {
  const int target = 2 * (k - d) + 1;
  return verify_degree(rule, target) >= target;
}

double condition_number(const Eigen::VectorXd& weights) {
  const double sum = weights.sum();
  if (sum == 0.0) throw std::invalid_argument("condition_number requires nonzero weight sum");
  return weights.cwiseAbs().sum() / sum;
}

double condition_number(const std::vector<double>& weights) {
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights.data(), weights.size());
  return condition_number(w);
}

}  // namespace cq
