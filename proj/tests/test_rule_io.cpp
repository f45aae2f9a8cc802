#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "cq/cubature.hpp"
#include "cq/rule_io.hpp"
#include "cq/smolyak.hpp"
#include "oracle.hpp"

using cq::Distribution;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("distribution json round trip") {
  const Distribution dists[] = {
      Distribution::uniform(-1.0, 1.0),
      Distribution::beta(4.0, 4.0, 0.0038, 0.05),
      Distribution::normal(0.5, 2.0),
  };
  for (const auto& d : dists) {
    const auto j = cq::distribution_to_json(d);
    CHECK(cq::distribution_from_json(j) == d);
  }
  const auto spec = nlohmann::json::parse(R"({"kind":"beta","a":4,"b":4,"range":[0.0038,0.05]})");
  CHECK(cq::distribution_from_json(spec) == Distribution::beta(4.0, 4.0, 0.0038, 0.05));
}

TEST_CASE("1d rule files are bitwise lossless") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 20);
    const auto dist = rep % 2 == 0 ? Distribution::beta(2.0, 5.0) : Distribution::normal(0.0, 1.0);
    const auto rule = cq::gauss_rule(dist, n);

    TempFile f("quad.json");
    cq::RuleFile out;
    out.metadata = {{"invocation", "test"}, {"seed", rep}};
    out.payload = rule;
    cq::save_rule_file(out, f.path);

    const auto in = cq::load_rule_file(f.path);
    const auto& loaded = std::get<cq::QuadratureRule>(in.payload);
    CHECK(loaded.nodes == rule.nodes);      // bitwise
    CHECK(loaded.weights == rule.weights);  // bitwise
    CHECK(loaded.degree == rule.degree);
    CHECK(loaded.dist == rule.dist);
    CHECK(loaded.provenance == rule.provenance);
    CHECK(in.metadata.at("seed").get<int>() == rep);
  }
}

TEST_CASE("cubature rule files are bitwise lossless") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const cq::ClenshawCurtisFamily cc(uni);
  const auto rule = cq::smolyak_rule(cc, 4, 2).rule;

  TempFile f("cub.json");
  cq::RuleFile out;
  out.payload = rule;
  cq::save_rule_file(out, f.path);
  const auto in = cq::load_rule_file(f.path);
  const auto& loaded = std::get<cq::CubatureRule>(in.payload);
  CHECK(loaded.nodes == rule.nodes);
  CHECK(loaded.weights == rule.weights);
  CHECK(loaded.degree == rule.degree);
  CHECK(loaded.provenance == rule.provenance);
}

TEST_CASE("family files keep ordering and the nested flag") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const auto family = cq::nested_family(cq::gauss_rule(uni, 9), cq::ReductionCriterion{});

  TempFile f("family.json");
  cq::RuleFile out;
  out.payload = family;
  cq::save_rule_file(out, f.path);

  std::ifstream raw(f.path);
  nlohmann::json j;
  raw >> j;
  CHECK(j.at("nested").get<bool>());
  CHECK(j.at("schema").get<std::string>() == "cq-rule/1");

  const auto in = cq::load_rule_file(f.path);
  REQUIRE(in.is_family());
  const auto& loaded = std::get<cq::NestedFamily>(in.payload);
  REQUIRE(loaded.rules.size() == family.rules.size());
  for (size_t i = 0; i < loaded.rules.size(); ++i) {
    CHECK(loaded.rules[i].nodes == family.rules[i].nodes);
  }
}

TEST_CASE("csv export is deterministic with 17 significant digits") {
  const auto uni = Distribution::uniform(-1.0, 1.0);
  const auto rule = cq::gauss_rule(uni, 3);
  const auto csv1 = cq::rule_to_csv(rule, "cq quad --n 3");
  const auto csv2 = cq::rule_to_csv(rule, "cq quad --n 3");
  CHECK(csv1 == csv2);
  CHECK(csv1.find("# cq quad --n 3\n") == 0);
  CHECK(csv1.find("node,weight\n") != std::string::npos);
  CHECK(csv1.find("0.77459666924148338") != std::string::npos);
  CHECK(csv1.find("\r") == std::string::npos);
}

TEST_CASE("schema violations are rejected") {
  TempFile f("bad.json");
  {
    std::ofstream out(f.path);
    out << R"({"schema":"other/9","rule":{}})";
  }
  CHECK_THROWS(cq::load_rule_file(f.path));
}
