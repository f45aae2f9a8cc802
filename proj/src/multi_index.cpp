#include "cq/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace cq {

std::int64_t dim_poly(int k, int d) {
  if (k < 0 || d < 0) throw std::invalid_argument("dim_poly requires k, d >= 0");
  // C(k+d, d) with overflow guard.
  __int128 acc = 1;
  for (int i = 1; i <= d; ++i) {
    acc = acc * (k + i) / i;
    if (acc > static_cast<__int128>(INT64_MAX)) {
      throw std::overflow_error("dim_poly overflows 64-bit range");
    }
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t restricted_partition_count(int l, int d) {
  if (l < 0 || d < 1) throw std::invalid_argument("restricted_partition_count: l >= 0, d >= 1");
  // p(l, j): partitions of l into at most j parts; p(l, j) = p(l, j-1) + p(l-j, j).
  std::vector<std::vector<std::int64_t>> p(l + 1, std::vector<std::int64_t>(d + 1, 0));
  for (int j = 0; j <= d; ++j) p[0][j] = 1;
  for (int ll = 1; ll <= l; ++ll) {
    for (int j = 1; j <= d; ++j) {
      p[ll][j] = p[ll][j - 1] + (ll >= j ? p[ll - j][j] : 0);
    }
  }
  return p[l][d];
}

std::int64_t cumulative_bound(int b, int d) {
  if (b < 0) throw std::invalid_argument("cumulative_bound: b >= 0");
  std::int64_t total = 1;
  for (int l = 1; l <= b; ++l) total += restricted_partition_count(l, d);
  return total;
}

namespace {

void emit_degree_block(int degree, int d, std::vector<int>& cur, int pos,
                       std::vector<std::vector<int>>& out) {
  if (pos == d - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  // Lexicographically descending: highest exponent on the earliest axis first.
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    emit_degree_block(degree - e, d, cur, pos + 1, out);
  }
}

void emit_sorted(int remaining, int d, int minimum, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d) {
    out.push_back(cur);
    return;
  }
  for (int e = minimum; e <= remaining; ++e) {
    cur.push_back(e);
    emit_sorted(remaining - e, d, e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MultiIndexSet MultiIndexSet::total_degree(int k, int d) {
  if (k < 0 || d < 1) throw std::invalid_argument("MultiIndexSet: k >= 0, d >= 1");
  MultiIndexSet set(k, d);
  set.indices_.reserve(static_cast<size_t>(dim_poly(k, d)));
  std::vector<int> cur(d, 0);
  for (int degree = 0; degree <= k; ++degree) {
    emit_degree_block(degree, d, cur, 0, set.indices_);
  }
  return set;
}

std::vector<std::vector<int>> sorted_multi_indices(int b, int d) {
  if (b < 0 || d < 1) throw std::invalid_argument("sorted_multi_indices: b >= 0, d >= 1");
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> block;
  std::vector<int> cur;
  for (int degree = 0; degree <= b; ++degree) {
    block.clear();
    emit_sorted(degree, d, 0, cur, block);
    // keep only tuples that sum exactly to `degree`
    for (auto& e : block) {
      int s = 0;
      for (int v : e) s += v;
      if (s == degree) out.push_back(e);
    }
  }
  return out;
}

}  // namespace cq
