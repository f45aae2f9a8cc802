#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cq/cubature.hpp"
#include "cq/genz.hpp"
#include "cq/multi_index.hpp"
#include "cq/quadrature.hpp"
#include "cq/reduce1d.hpp"
#include "cq/rule_io.hpp"
#include "cq/smolyak.hpp"

namespace py = pybind11;
using namespace cq;

namespace {

ReductionCriterion make_criterion(const std::string& kind) {
  ReductionCriterion crit;
  if (kind == "prior") {
    crit.kind = CriterionKind::prior;
  } else if (kind == "weight") {
    crit.kind = CriterionKind::weight;
  } else {
    throw std::invalid_argument("criterion must be 'prior' or 'weight'");
  }
  return crit;
}

std::unique_ptr<QuadratureFamily> make_family(const std::string& source,
                                              const Distribution& dist) {
  if (source == "cc") return std::make_unique<ClenshawCurtisFamily>(dist);
  if (source == "gauss") return std::make_unique<GaussFamily>(dist);
  throw std::invalid_argument("family source must be 'cc' or 'gauss'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "nested positive-weight quadrature and sparse cubature rules";

  py::class_<Distribution>(m, "Distribution")
      .def_static("uniform", &Distribution::uniform, py::arg("lo"), py::arg("hi"))
      .def_static("beta",
                  py::overload_cast<double, double>(&Distribution::beta),
                  py::arg("a"), py::arg("b"))
      .def_static("beta",
                  py::overload_cast<double, double, double, double>(&Distribution::beta),
                  py::arg("a"), py::arg("b"), py::arg("lo"), py::arg("hi"))
      .def_static("normal", &Distribution::normal, py::arg("mean"), py::arg("stddev"))
      .def("pdf", &Distribution::pdf)
      .def("raw_moment", &Distribution::raw_moment)
      .def("normalized_moment", &Distribution::normalized_moment)
      .def("symmetry_center", &Distribution::symmetry_center)
      .def("__repr__", &Distribution::describe);

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("degree", &QuadratureRule::degree)
      .def_readonly("dist", &QuadratureRule::dist)
      .def_property_readonly("provenance",
                             [](const QuadratureRule& r) { return to_string(r.provenance); })
      .def("size", &QuadratureRule::size)
      .def("verify_degree", [](const QuadratureRule& r) { return verify_degree(r); })
      .def("integrate", [](const QuadratureRule& r, const std::function<double(double)>& f) {
        return r.integrate(f);
      });

  py::class_<CubatureRule>(m, "CubatureRule")
      .def_property_readonly("nodes", [](const CubatureRule& r) { return r.nodes; })
      .def_property_readonly("weights", [](const CubatureRule& r) { return r.weights; })
      .def_readonly("degree", &CubatureRule::degree)
      .def_property_readonly("provenance",
                             [](const CubatureRule& r) { return to_string(r.provenance); })
      .def("dim", &CubatureRule::dim)
      .def("size", &CubatureRule::size)
      .def("verify_degree", [](const CubatureRule& r, int cap) { return verify_degree(r, cap); })
      .def("condition_number", [](const CubatureRule& r) { return condition_number(r.weights); })
      .def("integrate", [](const CubatureRule& r, const std::function<double(py::array_t<double>)>& f) {
        return r.integrate([&](const Eigen::RowVectorXd& x) {
          return f(py::array_t<double>(x.size(), x.data()));
        });
      });

  py::class_<NestedFamily>(m, "NestedFamily")
      .def_readonly("rules", &NestedFamily::rules)
      .def("sizes", [](const NestedFamily& f) {
        std::vector<int> s;
        for (const auto& r : f.rules) s.push_back(r.size());
        return s;
      });

  m.def("gauss_rule", &gauss_rule, py::arg("dist"), py::arg("n"));
  m.def("clenshaw_curtis_rule", &clenshaw_curtis_rule, py::arg("dist"), py::arg("n"));
  m.def("weights_from_nodes", &weights_from_nodes, py::arg("dist"), py::arg("nodes"),
        py::arg("relax_size_guard") = false);

  m.def(
      "reduction_step",
      [](const QuadratureRule& rule, const std::string& criterion) {
        return reduction_step(rule, make_criterion(criterion));
      },
      py::arg("rule"), py::arg("criterion") = "prior");
  m.def(
      "nested_family",
      [](const QuadratureRule& rule, const std::string& criterion) {
        return nested_family(rule, make_criterion(criterion));
      },
      py::arg("rule"), py::arg("criterion") = "prior");

  m.def("tensor_rule", &tensor_rule, py::arg("axis_rules"));
  m.def(
      "smolyak_rule",
      [](const std::string& source, const Distribution& dist, int k, int d) {
        const auto family = make_family(source, dist);
        return smolyak_rule(*family, k, d).rule;
      },
      py::arg("source"), py::arg("dist"), py::arg("k"), py::arg("d"));
  m.def(
      "smolyak_rule_from_family",
      [](const NestedFamily& family, int k, int d) {
        const ReducedFamily reduced(family);
        return smolyak_rule(reduced, k, d).rule;
      },
      py::arg("family"), py::arg("k"), py::arg("d"));

  m.def(
      "reduce_general",
      [](const CubatureRule& rule, int target_degree, const std::string& criterion) {
        return reduce_step_general(rule, target_degree, make_criterion(criterion));
      },
      py::arg("rule"), py::arg("target_degree"), py::arg("criterion") = "prior");
  m.def(
      "reduce_symmetric",
      [](const CubatureRule& rule, int target_degree, const std::string& criterion) {
        return reduce_step_symmetric(rule, target_degree, make_criterion(criterion));
      },
      py::arg("rule"), py::arg("target_degree"), py::arg("criterion") = "prior");
  m.def("reduce_negative", &reduce_step_negative, py::arg("rule"), py::arg("target_degree"));

  m.def("dim_poly", &dim_poly, py::arg("k"), py::arg("d"));
  m.def("restricted_partition_count", &restricted_partition_count, py::arg("l"), py::arg("d"));
  m.def("cumulative_bound", &cumulative_bound, py::arg("b"), py::arg("d"));

  py::class_<GenzSpec>(m, "GenzSpec")
      .def_readonly("family", &GenzSpec::family)
      .def_readonly("n", &GenzSpec::n)
      .def_property_readonly("a", [](const GenzSpec& s) { return s.a; })
      .def_property_readonly("u", [](const GenzSpec& s) { return s.u; });

  m.def("genz_random_spec", &genz_random_spec, py::arg("family"), py::arg("n"), py::arg("seed"));
  m.def(
      "genz_evaluate",
      [](const GenzSpec& spec, const Eigen::VectorXd& x) {
        return genz_evaluate(spec, x.transpose());
      },
      py::arg("spec"), py::arg("x"));
  m.def("genz_exact_uniform", &genz_exact_uniform, py::arg("spec"));

  m.def(
      "save_rule",
      [](const QuadratureRule& rule, const std::string& path) {
        RuleFile f;
        f.payload = rule;
        save_rule_file(f, path);
      },
      py::arg("rule"), py::arg("path"));
  m.def(
      "save_cubature",
      [](const CubatureRule& rule, const std::string& path) {
        RuleFile f;
        f.payload = rule;
        save_rule_file(f, path);
      },
      py::arg("rule"), py::arg("path"));
  m.def(
      "load_rule",
      [](const std::string& path) -> py::object {
        const auto f = load_rule_file(path);
        if (const auto* q = std::get_if<QuadratureRule>(&f.payload)) return py::cast(*q);
        if (const auto* c = std::get_if<CubatureRule>(&f.payload)) return py::cast(*c);
        return py::cast(std::get<NestedFamily>(f.payload));
      },
      py::arg("path"));
}
