#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cq/quadrature.hpp"
#include "oracle.hpp"

using cq::Distribution;
using cq::QuadratureRule;

TEST_CASE("gauss_rule: hand values") {
  const auto uni = Distribution::uniform(-1.0, 1.0);

  const auto g1 = cq::gauss_rule(uni, 1);
  CHECK(g1.nodes == std::vector<double>{0.0});
  CHECK(g1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  const auto g2 = cq::gauss_rule(uni, 2);
  CHECK(g2.nodes[0] == doctest::Approx(-0.5773502691896257).epsilon(1e-12));
  CHECK(g2.nodes[1] == doctest::Approx(+0.5773502691896257).epsilon(1e-12));
  CHECK(g2.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(g2.weights[1] == doctest::Approx(0.5).epsilon(1e-13));

  const auto h2 = cq::gauss_rule(Distribution::normal(0.0, 1.0), 2);
  CHECK(h2.nodes[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(h2.nodes[1] == doctest::Approx(+1.0).epsilon(1e-12));
  double m2 = 0.0;
  for (int i = 0; i < 2; ++i) m2 += h2.weights[i] * h2.nodes[i] * h2.nodes[i];
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gauss_rule: degree 2N-1 for all three families, N <= 12") {
  const Distribution dists[] = {
      Distribution::uniform(-1.0, 1.0),
      Distribution::beta(4.0, 4.0),
      Distribution::beta(2.0, 5.0),
      Distribution::normal(0.0, 1.0),
  };
  for (const auto& dist : dists) {
    CAPTURE(dist.describe());
    for (int n = 1; n <= 12; ++n) {
      const auto rule = cq::gauss_rule(dist, n);
      CHECK(rule.weights.size() == static_cast<size_t>(n));
      for (double w : rule.weights) CHECK(w > 0.0);
      CHECK(cq::verify_degree(rule) >= 2 * n - 1);
    }
  }
}

TEST_CASE("symmetric distributions give exactly mirrored gauss rules") {
  for (const auto& dist : {Distribution::uniform(-1.0, 1.0),
                           Distribution::beta(4.0, 4.0, 0.0038, 0.05),
                           Distribution::normal(2.0, 3.0)}) {
    CAPTURE(dist.describe());
    for (int n : {4, 7, 12}) {
      const auto rule = cq::gauss_rule(dist, n);
      const auto t = rule.normalized_nodes();
      for (int i = 0; i < n / 2; ++i) {
        CHECK(std::abs(t[i] + t[n - 1 - i]) <= 1e-12);
        CHECK(std::abs(rule.weights[i] - rule.weights[n - 1 - i]) <= 1e-12);
      }
      if (n % 2 == 1) CHECK(std::abs(t[n / 2]) <= 1e-12);
    }
  }
}

TEST_CASE("clenshaw_curtis_rule: hand values and nesting") {
  const auto uni = Distribution::uniform(-1.0, 1.0);

  const auto c1 = cq::clenshaw_curtis_rule(uni, 1);
  CHECK(c1.nodes == std::vector<double>{0.0});
  CHECK(c1.weights == std::vector<double>{1.0});

  const auto c3 = cq::clenshaw_curtis_rule(uni, 3);
  CHECK(c3.nodes == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(c3.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(c3.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(c3.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

  // bitwise nesting along the doubling sequence, on two distributions
  for (const auto& dist : {uni, Distribution::beta(4.0, 4.0)}) {
    CAPTURE(dist.describe());
    auto prev = cq::clenshaw_curtis_rule(dist, 3);
    for (int n : {5, 9, 17, 33}) {
      const auto next = cq::clenshaw_curtis_rule(dist, n);
      for (double x : prev.nodes) {
        CHECK(std::find(next.nodes.begin(), next.nodes.end(), x) != next.nodes.end());
      }
      prev = next;
    }
  }

  CHECK_THROWS(cq::clenshaw_curtis_rule(Distribution::normal(0.0, 1.0), 5));
}

TEST_CASE("clenshaw-curtis weights are not all positive for a sharply peaked beta") {
  const auto rule = cq::clenshaw_curtis_rule(Distribution::beta(10.0, 10.0), 17);
  double wmin = 1.0;
  for (double w : rule.weights) wmin = std::min(wmin, w);
  CHECK(wmin < 0.0);
}

TEST_CASE("weights_from_nodes: hand values and properties") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const auto w = cq::weights_from_nodes(uni, {-1.0, 0.0, 1.0});
  CHECK(w[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const auto b44 = Distribution::beta(4.0, 4.0);
  const auto wc = cq::weights_from_nodes(b44, {*b44.symmetry_center()});
  CHECK(wc.size() == 1);
  CHECK(wc[0] == doctest::Approx(1.0).epsilon(1e-14));

  const auto w3 = cq::weights_from_nodes(b44, {0.25, 0.5, 0.75});
  double sum = 0.0, m1 = 0.0, m2 = 0.0;
  const double xs[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 3; ++i) {
    sum += w3[i];
    m1 += w3[i] * xs[i];
    m2 += w3[i] * xs[i] * xs[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m1 == doctest::Approx(b44.raw_moment(1)).epsilon(1e-12));
  CHECK(m2 == doctest::Approx(b44.raw_moment(2)).epsilon(1e-12));

  CHECK_THROWS(cq::weights_from_nodes(uni, {0.5, 0.5}));
  CHECK_THROWS(cq::weights_from_nodes(uni, std::vector<double>(65, 0.0)));
}

TEST_CASE("weights_from_nodes reproduces the weights of existing positive rules") {
  for (const auto& dist : {Distribution::uniform(-1.0, 1.0), Distribution::beta(2.0, 5.0),
                           Distribution::normal(0.0, 1.0)}) {
    CAPTURE(dist.describe());
    for (int n : {4, 9, 16, 20}) {
      const auto rule = cq::gauss_rule(dist, n);
      const auto w = cq::weights_from_nodes(dist, rule.nodes);
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(w[i] - rule.weights[i]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("verify_degree: hand values") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  CHECK(cq::verify_degree(cq::gauss_rule(uni, 2)) == 3);
  CHECK(cq::verify_degree(cq::clenshaw_curtis_rule(uni, 3)) == 3);

  QuadratureRule mean_rule;
  mean_rule.nodes = {0.0};
  mean_rule.weights = {1.0};
  mean_rule.degree = 0;
  mean_rule.dist = uni;
  CHECK(cq::verify_degree(mean_rule) == 1);
}
