#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cq/smolyak.hpp"
#include "oracle.hpp"

using cq::ClenshawCurtisFamily;
using cq::Distribution;
using cq::GaussFamily;
using cq::ReducedFamily;

TEST_CASE("level sequence") {
  CHECK(cq::level_size(1) == 1);
  CHECK(cq::level_size(2) == 3);
  CHECK(cq::level_size(3) == 5);
  CHECK(cq::level_size(4) == 9);
  CHECK(cq::level_size(5) == 17);
  CHECK_THROWS(cq::level_size(0));
}

TEST_CASE("d=2 sparse grid sizes: nested vs non-nested") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const ClenshawCurtisFamily cc(uni);
  const GaussFamily gauss(uni);

  // nested Clenshaw-Curtis sequence 1, 5, 13, 29, 65
  const std::vector<int> expected = {1, 5, 13, 29, 65};
  for (int k = 2; k <= 6; ++k) {
    const auto res = cq::smolyak_rule(cc, k, 2);
    CHECK(res.rule.size() == expected[k - 2]);
  }

  // same level with non-nested Gauss-Legendre input
  const auto gl = cq::smolyak_rule(gauss, 6, 2);
  CHECK(gl.rule.size() == 141);
  CHECK(65 < gl.rule.size());
}

TEST_CASE("d=1 smolyak degenerates to the level-K rule") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const ClenshawCurtisFamily cc(uni);
  const auto res = cq::smolyak_rule(cc, 4, 1);
  const auto direct = cq::clenshaw_curtis_rule(uni, cq::level_size(4));
  REQUIRE(res.rule.size() == direct.size());
  for (int i = 0; i < res.rule.size(); ++i) {
    CHECK(res.rule.nodes(i, 0) == direct.nodes[i]);
    CHECK(res.rule.weights(i) == doctest::Approx(direct.weights[i]).epsilon(1e-13));
  }
}

TEST_CASE("d=5 level for degree 5 has 61 nodes") {
  const auto uni = Distribution::uniform(0.0, 1.0);
  const ClenshawCurtisFamily cc(uni);
  const auto res = cq::smolyak_rule(cc, 7, 5);
  CHECK(res.rule.size() == 61);
  CHECK(cq::smolyak_degree_check(res.rule, 7, 5));
}

TEST_CASE("smolyak of a reduced family reproduces the nested grid size in d=2") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const auto start = cq::clenshaw_curtis_rule(uni, 17);
  const auto family = cq::nested_family(start, cq::ReductionCriterion{});
  const ReducedFamily reduced(family);
  const auto res = cq::smolyak_rule(reduced, 6, 2);
  CHECK(res.rule.size() == 65);
  CHECK(cq::smolyak_degree_check(res.rule, 6, 2));
}

TEST_CASE("missing family level raises a named error") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const auto family = cq::nested_family(cq::clenshaw_curtis_rule(uni, 9), cq::ReductionCriterion{});
  const ReducedFamily reduced(family);
  CHECK_THROWS_WITH_AS(cq::smolyak_rule(reduced, 7, 2).rule.size(),
                       doctest::Contains("level 6"), std::out_of_range);
}

TEST_CASE("node merge preserves monomial integrals") {
  // Accumulate each tensor term separately (no merging) and compare the
  // integral of monomials against the merged rule.
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const ClenshawCurtisFamily cc(uni);
  const int k = 5, d = 2;
  const auto merged = cq::smolyak_rule(cc, k, d);

  const int target = 2 * (k - d) + 1;
  for (int dx = 0; dx <= target; ++dx) {
    for (int dy = 0; dy + dx <= target; ++dy) {
      // unmerged estimate: direct combination formula
      double unmerged = 0.0;
      for (int a1 = 1; a1 <= k - 1; ++a1) {
        for (int a2 = std::max(1, k - d + 1 - a1); a1 + a2 <= k; ++a2) {
          const int q = k - a1 - a2;
          const double coeff = (q % 2 == 0 ? 1.0 : -1.0) * (q == 0 || q == 1 ? 1.0 : 0.0);
          if (coeff == 0.0) continue;
          const auto r1 = cq::clenshaw_curtis_rule(uni, cq::level_size(a1));
          const auto r2 = cq::clenshaw_curtis_rule(uni, cq::level_size(a2));
          double term = 0.0;
          for (int i = 0; i < r1.size(); ++i) {
            for (int j = 0; j < r2.size(); ++j) {
              term += r1.weights[i] * r2.weights[j] * std::pow(r1.nodes[i], dx) *
                      std::pow(r2.nodes[j], dy);
            }
          }
          unmerged += coeff * term;
        }
      }
      double merged_est = 0.0;
      for (int i = 0; i < merged.rule.size(); ++i) {
        merged_est += merged.rule.weights(i) * std::pow(merged.rule.nodes(i, 0), dx) *
                      std::pow(merged.rule.nodes(i, 1), dy);
      }
      CHECK(std::abs(merged_est - unmerged) <= 1e-11);
    }
  }
}

TEST_CASE("condition number") {
  CHECK(cq::condition_number(std::vector<double>{0.25, 0.5, 0.25}) == 1.0);
  CHECK(cq::condition_number(std::vector<double>{1.5, -0.5}) == 2.0);
  CHECK_THROWS(cq::condition_number(std::vector<double>{0.5, -0.5}));
}

TEST_CASE("lemma-style degree bound holds for a d=2 CC grid") {
  const auto uni = Distribution::uniform(0.0, 1.0);
  const ClenshawCurtisFamily cc(uni);
  const auto res = cq::smolyak_rule(cc, 5, 2);
  CHECK(cq::smolyak_degree_check(res.rule, 5, 2));  // degree >= 7
}
