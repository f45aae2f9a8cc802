#pragma once

#include <cstdint>
#include <vector>

namespace cq {

/// dim P(K, d) = C(K+d, d), the number of d-variate monomials of total
/// degree at most K. Throws std::overflow_error instead of wrapping.
std::int64_t dim_poly(int k, int d);

/// Restricted partition function p_d(l): partitions of l into at most d
/// parts, i.e. weakly increasing nonnegative d-tuples summing to l.
std::int64_t restricted_partition_count(int l, int d);

/// 1 + sum_{l=1..B} p_d(l): all weakly increasing nonnegative d-tuples with
/// sum at most B.
std::int64_t cumulative_bound(int b, int d);

/// All exponent vectors with |alpha| <= K in graded lexicographic order:
/// ascending total degree, lexicographically descending within a degree
/// (so for d=2, degree 2: (2,0), (1,1), (0,2)). The ordering is total and
/// reproducible; the trailing block of any degree K set is exactly the
/// degree-K monomials.
class MultiIndexSet {
 public:
  static MultiIndexSet total_degree(int k, int d);

  int dimension() const { return d_; }
  int max_degree() const { return k_; }
  const std::vector<std::vector<int>>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }

 private:
  MultiIndexSet(int k, int d) : k_(k), d_(d) {}
  int k_ = 0, d_ = 0;
  std::vector<std::vector<int>> indices_;
};

/// All weakly increasing exponent vectors with |e| <= B, graded then
/// lexicographic among the sorted representatives.
std::vector<std::vector<int>> sorted_multi_indices(int b, int d);

}  // namespace cq
