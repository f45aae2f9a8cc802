#include "cq/rule_io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace cq {

using nlohmann::json;

json distribution_to_json(const Distribution& dist) {
  json j;
  switch (dist.kind()) {
    case DistKind::uniform:
      j["kind"] = "uniform";
      j["range"] = {dist.lower(), dist.upper()};
      break;
    case DistKind::beta:
      j["kind"] = "beta";
      j["a"] = dist.shape_a();
      j["b"] = dist.shape_b();
      j["range"] = {dist.lower(), dist.upper()};
      break;
    case DistKind::normal:
      j["kind"] = "normal";
      j["mean"] = dist.mean_param();
      j["stddev"] = dist.stddev_param();
      break;
  }
  return j;
}

Distribution distribution_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    const auto range = j.at("range");
    return Distribution::uniform(range.at(0).get<double>(), range.at(1).get<double>());
  }
  if (kind == "beta") {
    double lo = 0.0, hi = 1.0;
    if (j.contains("range")) {
      lo = j["range"].at(0).get<double>();
      hi = j["range"].at(1).get<double>();
    }
    return Distribution::beta(j.at("a").get<double>(), j.at("b").get<double>(), lo, hi);
  }
  if (kind == "normal") {
    return Distribution::normal(j.at("mean").get<double>(), j.at("stddev").get<double>());
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

json rule_to_json(const QuadratureRule& rule) {
  json j;
  j["nodes"] = rule.nodes;
  j["weights"] = rule.weights;
  j["degree"] = rule.degree;
  j["distribution"] = distribution_to_json(rule.dist);
  j["provenance"] = to_string(rule.provenance);
  return j;
}

QuadratureRule rule_from_json_1d(const json& j) {
  QuadratureRule rule;
  rule.nodes = j.at("nodes").get<std::vector<double>>();
  rule.weights = j.at("weights").get<std::vector<double>>();
  rule.degree = j.at("degree").get<int>();
  rule.dist = distribution_from_json(j.at("distribution"));
  rule.provenance = provenance_from_string(j.at("provenance").get<std::string>());
  rule.validate();
  return rule;
}

json rule_to_json(const CubatureRule& rule) {
  json j;
  j["d"] = rule.dim();
  json nodes = json::array();
  for (int i = 0; i < rule.size(); ++i) {
    json row = json::array();
    for (int a = 0; a < rule.dim(); ++a) row.push_back(rule.nodes(i, a));
    nodes.push_back(std::move(row));
  }
  j["nodes"] = std::move(nodes);
  std::vector<double> w(rule.weights.data(), rule.weights.data() + rule.size());
  j["weights"] = w;
  j["degree"] = rule.degree;
  json dists = json::array();
  for (const auto& dist : rule.axes) dists.push_back(distribution_to_json(dist));
  j["distributions"] = std::move(dists);
  j["provenance"] = to_string(rule.provenance);
  return j;
}

CubatureRule rule_from_json_nd(const json& j) {
  CubatureRule rule;
  const int d = j.at("d").get<int>();
  for (const auto& dj : j.at("distributions")) rule.axes.push_back(distribution_from_json(dj));
  if (static_cast<int>(rule.axes.size()) != d) {
    throw std::invalid_argument("rule file: axis count mismatch");
  }
  const auto& nodes = j.at("nodes");
  rule.nodes.resize(nodes.size(), d);
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int a = 0; a < d; ++a) {
      rule.nodes(static_cast<Eigen::Index>(i), a) = nodes.at(i).at(a).get<double>();
    }
  }
  const auto w = j.at("weights").get<std::vector<double>>();
  rule.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
  rule.degree = j.at("degree").get<int>();
  rule.provenance = cub_provenance_from_string(j.at("provenance").get<std::string>());
  rule.validate();
  return rule;
}

void save_rule_file(const RuleFile& file, const std::string& path) {
  json j;
  j["schema"] = kSchemaVersion;
  j["metadata"] = file.metadata;
  if (const auto* quad = std::get_if<QuadratureRule>(&file.payload)) {
    j["rule"] = rule_to_json(*quad);
  } else if (const auto* cub = std::get_if<CubatureRule>(&file.payload)) {
    j["rule"] = rule_to_json(*cub);
  } else {
    const auto& family = std::get<NestedFamily>(file.payload);
    j["nested"] = true;
    json rules = json::array();
    for (const auto& r : family.rules) rules.push_back(rule_to_json(r));
    j["rules"] = std::move(rules);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

RuleFile load_rule_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open rule file: " + path);
  json j;
  in >> j;
  if (j.value("schema", "") != kSchemaVersion) {
    throw std::runtime_error("unsupported rule file schema in " + path);
  }
  RuleFile file;
  file.metadata = j.value("metadata", json::object());
  if (j.contains("rules")) {
    NestedFamily family;
    for (const auto& rj : j.at("rules")) family.rules.push_back(rule_from_json_1d(rj));
    family.validate();
    file.payload = std::move(family);
  } else {
    const auto& rj = j.at("rule");
    if (rj.contains("d")) {
      file.payload = rule_from_json_nd(rj);
    } else {
      file.payload = rule_from_json_1d(rj);
    }
  }
  return file;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string rule_to_csv(const QuadratureRule& rule, const std::string& invocation) {
  std::string out = "# " + invocation + "\n";
  out += "node,weight\n";
  for (int i = 0; i < rule.size(); ++i) {
    out += fmt17(rule.nodes[i]) + "," + fmt17(rule.weights[i]) + "\n";
  }
  return out;
}

std::string rule_to_csv(const CubatureRule& rule, const std::string& invocation) {
  std::string out = "# " + invocation + "\n";
  for (int a = 0; a < rule.dim(); ++a) out += "x" + std::to_string(a) + ",";
  out += "weight\n";
  for (int i = 0; i < rule.size(); ++i) {
    for (int a = 0; a < rule.dim(); ++a) out += fmt17(rule.nodes(i, a)) + ",";
    out += fmt17(rule.weights(i)) + "\n";
  }
  return out;
}

}  // namespace cq
