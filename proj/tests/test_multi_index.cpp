#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cq/multi_index.hpp"
#include "oracle.hpp"

TEST_CASE("dim_poly: hand values") {
  CHECK(cq::dim_poly(5, 5) == 252);
  CHECK(cq::dim_poly(5, 7) == 792);
  CHECK(cq::dim_poly(0, 3) == 1);
  CHECK(cq::dim_poly(9, 2) == 55);
  CHECK(cq::dim_poly(8, 2) == 45);
  CHECK_THROWS_AS(cq::dim_poly(40, 40), std::overflow_error);
}

TEST_CASE("restricted partition counts vs enumeration oracle") {
  CHECK(cq::restricted_partition_count(3, 2) == 2);  // 3, 2+1
  CHECK(cq::restricted_partition_count(0, 4) == 1);
  CHECK(cq::cumulative_bound(2, 2) == 4);  // (0,0),(0,1),(0,2),(1,1)

  for (int d = 1; d <= 12; ++d) {
    for (int b = 0; b <= 12; ++b) {
      CHECK(cq::cumulative_bound(b, d) == oracle::count_weakly_increasing(b, d));
      CHECK(cq::restricted_partition_count(b, d) == oracle::count_partitions(b, d));
    }
  }
}

TEST_CASE("multi-index set: graded lexicographic order") {
  const auto set = cq::MultiIndexSet::total_degree(2, 2);
  const std::vector<std::vector<int>> expected = {
      {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
  };
  CHECK(set.indices() == expected);
  CHECK(set.size() == static_cast<size_t>(cq::dim_poly(2, 2)));

  // trailing block of a degree-K set is exactly the degree-K monomials
  const auto big = cq::MultiIndexSet::total_degree(6, 3);
  const auto small_count = cq::dim_poly(5, 3);
  for (size_t i = small_count; i < big.size(); ++i) {
    int total = 0;
    for (int e : big.indices()[i]) total += e;
    CHECK(total == 6);
  }
}

TEST_CASE("sorted multi-indices enumerate weakly increasing tuples") {
  const auto rows = cq::sorted_multi_indices(2, 2);
  const std::vector<std::vector<int>> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 1}};
  CHECK(rows == expected);
  for (int d = 1; d <= 6; ++d) {
    for (int b = 0; b <= 8; ++b) {
      CHECK(cq::sorted_multi_indices(b, d).size() ==
            static_cast<size_t>(cq::cumulative_bound(b, d)));
    }
  }
}
