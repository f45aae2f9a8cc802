// cq: generate, reduce and benchmark quadrature/cubature rules from the
// command line. Subcommands: quad, tensor, reduce, smolyak, counts,
// condition, benchmark. Exit codes: 0 success, 2 usage/validation error,
// 3 algorithmic failure.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cq/cubature.hpp"
#include "cq/genz.hpp"
#include "cq/multi_index.hpp"
#include "cq/quadrature.hpp"
#include "cq/reduce1d.hpp"
#include "cq/rule_io.hpp"
#include "cq/smolyak.hpp"
#include "cq/warnings.hpp"

namespace {

using cq::CubatureRule;
using cq::Distribution;
using cq::QuadratureRule;
using nlohmann::json;

std::string g_invocation;

// dist spec strings: "uniform:lo,hi", "beta:a,b[:lo,hi]", "normal:mean,stddev"
Distribution parse_dist(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty distribution spec");

  auto nums = [](const std::string& s) {
    std::vector<double> v;
    std::stringstream vs(s);
    std::string tok;
    while (std::getline(vs, tok, ',')) v.push_back(std::stod(tok));
    return v;
  };

  if (parts[0] == "uniform") {
    const auto r = nums(parts.at(1));
    return Distribution::uniform(r.at(0), r.at(1));
  }
  if (parts[0] == "beta") {
    const auto ab = nums(parts.at(1));
    if (parts.size() > 2) {
      const auto r = nums(parts[2]);
      return Distribution::beta(ab.at(0), ab.at(1), r.at(0), r.at(1));
    }
    return Distribution::beta(ab.at(0), ab.at(1));
  }
  if (parts[0] == "normal") {
    const auto ms = nums(parts.at(1));
    return Distribution::normal(ms.at(0), ms.at(1));
  }
  throw std::invalid_argument("unknown distribution kind: " + parts[0]);
}

json base_metadata() { return json{{"invocation", g_invocation}}; }

void write_rule(const QuadratureRule& rule, const std::string& out, const std::string& csv,
                json metadata) {
  cq::RuleFile file;
  file.metadata = std::move(metadata);
  file.payload = rule;
  cq::save_rule_file(file, out);
  if (!csv.empty()) {
    std::ofstream os(csv, std::ios::binary);
    os << cq::rule_to_csv(rule, g_invocation);
  }
}

void write_rule(const CubatureRule& rule, const std::string& out, const std::string& csv,
                json metadata) {
  cq::RuleFile file;
  file.metadata = std::move(metadata);
  file.payload = rule;
  cq::save_rule_file(file, out);
  if (!csv.empty()) {
    std::ofstream os(csv, std::ios::binary);
    os << cq::rule_to_csv(rule, g_invocation);
  }
}

QuadratureRule make_1d(const Distribution& dist, const std::string& kind, int n) {
  if (kind == "gauss") return cq::gauss_rule(dist, n);
  if (kind == "cc" || kind == "clenshaw_curtis") return cq::clenshaw_curtis_rule(dist, n);
  throw std::invalid_argument("unknown rule kind: " + kind + " (expected gauss or cc)");
}

std::vector<Distribution> broadcast_dists(const std::vector<std::string>& specs, int d) {
  std::vector<Distribution> dists;
  if (specs.size() == 1) {
    dists.assign(d, parse_dist(specs[0]));
  } else if (static_cast<int>(specs.size()) == d) {
    for (const auto& s : specs) dists.push_back(parse_dist(s));
  } else {
    throw std::invalid_argument("--dist must be given once or once per axis");
  }
  return dists;
}

// ---------------------------------------------------------------------------

int cmd_quad(const std::string& dist_spec, const std::string& kind, int n,
             const std::string& out, const std::string& csv) {
  const auto rule = make_1d(parse_dist(dist_spec), kind, n);
  json meta = base_metadata();
  meta["kind"] = kind;
  meta["n"] = n;
  write_rule(rule, out, csv, std::move(meta));
  std::cout << "wrote " << out << " (" << rule.size() << " nodes, declared degree "
            << rule.degree << ")\n";
  return 0;
}

int cmd_tensor(const std::vector<std::string>& dist_specs, const std::string& kind, int n,
               int d, const std::string& out, const std::string& csv) {
  const auto dists = broadcast_dists(dist_specs, d);
  std::vector<QuadratureRule> axes;
  axes.reserve(d);
  for (const auto& dist : dists) axes.push_back(make_1d(dist, kind, n));
  const auto rule = cq::tensor_rule(axes);
  json meta = base_metadata();
  meta["kind"] = kind;
  meta["n"] = n;
  meta["d"] = d;
  write_rule(rule, out, csv, std::move(meta));
  std::cout << "wrote " << out << " (" << rule.size() << " nodes)\n";
  return 0;
}

int cmd_reduce(const std::string& in, const std::string& mode, const std::string& criterion,
               int target_size, int target_degree, const std::string& out,
               const std::string& csv) {
  cq::ReductionCriterion crit;
  if (criterion == "weight") {
    crit.kind = cq::CriterionKind::weight;
  } else if (criterion != "prior") {
    throw std::invalid_argument("criterion must be prior or weight");
  }

  const auto file = cq::load_rule_file(in);
  if (file.is_family()) throw std::invalid_argument("reduce expects a single-rule file");

  if (const auto* quad = std::get_if<QuadratureRule>(&file.payload)) {
    if (mode == "negative") {
      throw std::invalid_argument("negative mode applies to multi-dimensional rules only");
    }
    QuadratureRule rule = *quad;
    if (mode == "symmetric" && !cq::is_symmetric_rule(rule)) {
      throw std::invalid_argument("input rule is not symmetric");
    }
    const int stop = target_size > 0 ? target_size : 1;
    cq::NestedFamily family;
    family.rules.push_back(rule);
    while (family.rules.back().size() > stop) {
      const auto& parent = family.rules.back();
      const auto child = cq::reduction_step(parent, crit);
      double lo = child.weights.front(), hi = lo;
      for (double w : child.weights) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      std::cout << "step: " << parent.size() << " -> " << child.size()
                << " nodes, removed {";
      bool first = true;
      for (double x : parent.nodes) {
        if (std::find(child.nodes.begin(), child.nodes.end(), x) == child.nodes.end()) {
          std::cout << (first ? "" : ", ") << x;
          first = false;
        }
      }
      std::cout << "}, weights in [" << lo << ", " << hi << "]\n";
      family.rules.push_back(child);
    }

    const std::string stem = out.size() > 5 && out.substr(out.size() - 5) == ".json"
                                 ? out.substr(0, out.size() - 5)
                                 : out;
    for (const auto& r : family.rules) {
      json meta = base_metadata();
      meta["criterion"] = criterion;
      write_rule(r, stem + "_" + std::to_string(r.size()) + ".json", "", std::move(meta));
    }
    cq::RuleFile famfile;
    famfile.metadata = base_metadata();
    famfile.metadata["criterion"] = criterion;
    famfile.payload = family;
    cq::save_rule_file(famfile, stem + "_family.json");
    std::cout << "wrote " << family.rules.size() << " rule files and " << stem
              << "_family.json\n";
    return 0;
  }

  const auto& cub = std::get<CubatureRule>(file.payload);
  const int tau = target_degree > 0 ? target_degree : cub.degree;
  CubatureRule reduced;
  if (mode == "positive") {
    reduced = cq::reduce_step_general(cub, tau, crit);
  } else if (mode == "symmetric") {
    reduced = cq::reduce_step_symmetric(cub, tau, crit);
  } else if (mode == "negative") {
    reduced = cq::reduce_step_negative(cub, tau);
  } else {
    throw std::invalid_argument("mode must be positive, symmetric or negative");
  }
  double lo = reduced.weights.minCoeff(), hi = reduced.weights.maxCoeff();
  std::cout << "reduced " << cub.size() << " -> " << reduced.size()
            << " nodes at degree " << tau << ", weights in [" << lo << ", " << hi << "]\n";
  json meta = base_metadata();
  meta["mode"] = mode;
  meta["criterion"] = criterion;
  meta["target_degree"] = tau;
  write_rule(reduced, out, csv, std::move(meta));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_smolyak(const std::string& source, const std::vector<std::string>& dist_specs,
                const std::vector<std::string>& family_files, int k, int d,
                const std::string& out, const std::string& csv) {
  std::vector<std::unique_ptr<cq::QuadratureFamily>> owners;
  std::vector<const cq::QuadratureFamily*> axes;

  if (source == "cc" || source == "gauss") {
    const auto dists = broadcast_dists(dist_specs, d);
    for (const auto& dist : dists) {
      if (source == "cc") {
        owners.push_back(std::make_unique<cq::ClenshawCurtisFamily>(dist));
      } else {
        owners.push_back(std::make_unique<cq::GaussFamily>(dist));
      }
      axes.push_back(owners.back().get());
    }
  } else if (source == "family") {
    std::vector<std::string> files = family_files;
    if (files.size() == 1) files.assign(d, family_files[0]);
    if (static_cast<int>(files.size()) != d) {
      throw std::invalid_argument("--family-file must be given once or once per axis");
    }
    for (const auto& path : files) {
      auto file = cq::load_rule_file(path);
      if (!file.is_family()) {
        throw std::invalid_argument("smolyak family source must be a family file: " + path);
      }
      owners.push_back(
          std::make_unique<cq::ReducedFamily>(std::get<cq::NestedFamily>(file.payload)));
      axes.push_back(owners.back().get());
    }
  } else {
    throw std::invalid_argument("--source must be cc, gauss or family");
  }

  const auto res = cq::smolyak_rule(axes, k);
  std::cout << "sparse grid: " << res.rule.size() << " nodes, declared degree "
            << res.rule.degree << ", dropped " << res.dropped_zero_weight_nodes
            << " zero-weight merged nodes\n";
  json meta = base_metadata();
  meta["k"] = k;
  meta["d"] = d;
  meta["source"] = source;
  meta["dropped_zero_weight_nodes"] = res.dropped_zero_weight_nodes;
  write_rule(res.rule, out, csv, std::move(meta));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_counts(const std::vector<int>& dims, const std::vector<int>& degrees,
               const std::vector<std::string>& modes, const std::string& out) {
  const bool want_smolyak = std::count(modes.begin(), modes.end(), "smolyak") > 0;
  const bool want_positive = std::count(modes.begin(), modes.end(), "positive") > 0;
  const bool want_negative = std::count(modes.begin(), modes.end(), "negative") > 0;
  const auto uni = Distribution::uniform(-1.0, 1.0);

  std::ostringstream table;
  table << "d,K,dimP";
  if (want_smolyak) table << ",N_smolyak";
  if (want_positive) table << ",N_positive";
  if (want_negative) table << ",N_negative";
  table << "\n";

  for (int d : dims) {
    for (int deg : degrees) {
      table << d << "," << deg << "," << cq::dim_poly(deg, d);
      if (want_smolyak) {
        int level = d;
        while (2 * (level - d) + 1 < deg) ++level;
        const cq::ClenshawCurtisFamily cc(uni);
        table << "," << cq::smolyak_rule(cc, level, d).rule.size();
      }
      if (want_positive || want_negative) {
        int n = (deg + 1) / 2 + ((deg + 1) / 2 % 2 == 0 ? 1 : 0);  // smallest odd size
        while (2 * n - 1 < deg) n += 2;
        if (std::pow(static_cast<double>(n), d) > 2e6) {
          throw std::invalid_argument("counts: tensor base " + std::to_string(n) + "^" +
                                      std::to_string(d) + " is beyond desk scale");
        }
        std::vector<QuadratureRule> axes(d, cq::gauss_rule(uni, n));
        const auto tensor = cq::tensor_rule(axes);
        if (want_positive) {
          table << "," << cq::reduce_step_symmetric(tensor, deg, cq::ReductionCriterion{}).size();
        }
        if (want_negative) {
          table << "," << cq::reduce_step_negative(tensor, deg).size();
        }
      }
      table << "\n";
    }
  }
  if (out.empty()) {
    std::cout << table.str();
  } else {
    std::ofstream os(out, std::ios::binary);
    os << "# " << g_invocation << "\n" << table.str();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_condition(const std::vector<std::string>& files) {
  std::cout << "file,nodes,kappa\n";
  for (const auto& path : files) {
    const auto file = cq::load_rule_file(path);
    if (file.is_family()) {
      for (const auto& r : std::get<cq::NestedFamily>(file.payload).rules) {
        std::cout << path << "," << r.size() << "," << cq::condition_number(r.weights) << "\n";
      }
    } else if (const auto* quad = std::get_if<QuadratureRule>(&file.payload)) {
      std::cout << path << "," << quad->size() << "," << cq::condition_number(quad->weights)
                << "\n";
    } else {
      const auto& cub = std::get<CubatureRule>(file.payload);
      std::cout << path << "," << cub.size() << "," << cq::condition_number(cub.weights)
                << "\n";
    }
  }
  return 0;
}

int cmd_benchmark(int family, int dim, int runs, std::uint64_t seed,
                  const std::vector<std::string>& rule_files, const std::string& out) {
  std::vector<cq::LadderEntry> ladder;
  for (const auto& path : rule_files) {
    const auto file = cq::load_rule_file(path);
    if (const auto* cub = std::get_if<CubatureRule>(&file.payload)) {
      ladder.push_back({std::filesystem::path(path).stem().string(), *cub});
    } else if (const auto* quad = std::get_if<QuadratureRule>(&file.payload)) {
      if (dim != 1) throw std::invalid_argument("1D rule given for a multi-d benchmark");
      ladder.push_back({std::filesystem::path(path).stem().string(),
                        cq::tensor_rule({*quad})});
    } else {
      throw std::invalid_argument("benchmark expects rule files, not families");
    }
  }
  const auto rows = cq::convergence_study(ladder, family, dim, runs, seed);

  std::ostringstream csv;
  csv << "rule_name,nodes,degree,mean_error\n";
  for (const auto& row : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", row.mean_error);
    csv << row.rule_name << "," << row.nodes << "," << row.degree << "," << buf << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(out, std::ios::binary);
    os << "# " << g_invocation << "\n" << csv.str();
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream inv;
  for (int i = 0; i < argc; ++i) inv << (i ? " " : "") << argv[i];
  g_invocation = inv.str();

  cq::set_warning_handler([](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; });

  CLI::App app{"nested, positive-weight quadrature and sparse cubature rules"};
  app.require_subcommand(1);

  // quad
  std::string dist_spec = "uniform:-1,1", kind = "gauss", out = "rule.json", csv;
  int n = 1;
  auto* quad = app.add_subcommand("quad", "generate a 1D rule");
  quad->add_option("--dist", dist_spec, "distribution spec, e.g. uniform:-1,1 or beta:4,4");
  quad->add_option("--kind", kind, "gauss or cc");
  quad->add_option("--n", n, "number of nodes")->required();
  quad->add_option("--out", out, "output rule file (json)");
  quad->add_option("--csv", csv, "optional CSV export path");

  // tensor
  std::vector<std::string> tensor_dists = {"uniform:-1,1"};
  std::string tkind = "gauss", tout = "tensor.json", tcsv;
  int tn = 3, td = 2;
  auto* tensor = app.add_subcommand("tensor", "generate a tensor-product rule");
  tensor->add_option("--dist", tensor_dists, "distribution spec (once or per axis)");
  tensor->add_option("--kind", tkind, "gauss or cc");
  tensor->add_option("--n", tn, "nodes per axis")->required();
  tensor->add_option("--d", td, "dimension")->required();
  tensor->add_option("--out", tout, "output rule file (json)");
  tensor->add_option("--csv", tcsv, "optional CSV export path");

  // reduce
  std::string rin, rmode = "positive", rcrit = "prior", rout = "reduced.json", rcsv;
  int rsize = 0, rdeg = 0;
  auto* reduce = app.add_subcommand("reduce", "reduce a rule by node removal");
  reduce->add_option("--in", rin, "input rule file")->required();
  reduce->add_option("--mode", rmode, "positive, symmetric or negative");
  reduce->add_option("--criterion", rcrit, "prior or weight");
  reduce->add_option("--target-size", rsize, "1D: stop at this size (default 1)");
  reduce->add_option("--target-degree", rdeg, "multi-d: degree to preserve");
  reduce->add_option("--out", rout, "output file or stem");
  reduce->add_option("--csv", rcsv, "optional CSV export path");

  // smolyak
  std::string ssource = "cc", sout = "smolyak.json", scsv;
  std::vector<std::string> sdists = {"uniform:-1,1"};
  std::vector<std::string> sfams;
  int sk = 2, sd = 2;
  auto* smolyak = app.add_subcommand("smolyak", "build a sparse-grid rule");
  smolyak->add_option("--source", ssource, "cc, gauss or family");
  smolyak->add_option("--dist", sdists, "distribution spec (once or per axis)");
  smolyak->add_option("--family-file", sfams, "family file(s) for --source family");
  smolyak->add_option("--k", sk, "combination level K")->required();
  smolyak->add_option("--d", sd, "dimension")->required();
  smolyak->add_option("--out", sout, "output rule file (json)");
  smolyak->add_option("--csv", scsv, "optional CSV export path");

  // counts
  std::vector<int> cdims = {5}, cdegs = {5};
  std::vector<std::string> cmodes = {"smolyak", "negative"};
  std::string ctable;
  auto* counts = app.add_subcommand("counts", "node-count table for rule variants");
  counts->add_option("--d", cdims, "dimensions");
  counts->add_option("--k", cdegs, "degrees");
  counts->add_option("--modes", cmodes, "any of: smolyak positive negative");
  counts->add_option("--out", ctable, "write the table to a CSV file");

  // condition
  std::vector<std::string> cfiles;
  auto* condition = app.add_subcommand("condition", "condition numbers of rule files");
  condition->add_option("files", cfiles, "rule files")->required();

  // benchmark
  int bfam = 1, bdim = 2, bruns = 100;
  std::uint64_t bseed = 0;
  std::vector<std::string> brules;
  std::string bout;
  auto* benchmark = app.add_subcommand("benchmark", "integration-error benchmark");
  benchmark->add_option("--family", bfam, "integrand family 1..6")->required();
  benchmark->add_option("--dim", bdim, "dimension")->required();
  benchmark->add_option("--runs", bruns, "number of random coefficient draws");
  benchmark->add_option("--seed", bseed, "base seed");
  benchmark->add_option("--rules", brules, "rule files to compare")->required();
  benchmark->add_option("--out", bout, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (quad->parsed()) return cmd_quad(dist_spec, kind, n, out, csv);
    if (tensor->parsed()) return cmd_tensor(tensor_dists, tkind, tn, td, tout, tcsv);
    if (reduce->parsed()) return cmd_reduce(rin, rmode, rcrit, rsize, rdeg, rout, rcsv);
    if (smolyak->parsed()) return cmd_smolyak(ssource, sdists, sfams, sk, sd, sout, scsv);
    if (counts->parsed()) return cmd_counts(cdims, cdegs, cmodes, ctable);
    if (condition->parsed()) return cmd_condition(cfiles);
    if (benchmark->parsed()) return cmd_benchmark(bfam, bdim, bruns, bseed, brules, bout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cq::ReductionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
