#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "branchlab/element.hpp"
#include "branchlab/error.hpp"
#include "branchlab/ggs.hpp"
#include "branchlab/quotient.hpp"
#include "branchlab/report.hpp"
#include "branchlab/search.hpp"

namespace py = pybind11;
using namespace branchlab;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::int_ to_pyint(const BigInt& n) { return py::int_(py::str(to_decimal(n))); }

FiniteSubset words(const GgsGroup& G, const std::vector<std::string>& text) {
  FiniteSubset out;
  for (auto const& t : text) {
    out.push_back(parse_word(t, G.degree()));
  }
  return out;
}

SearchParams search_params(const std::string& arena, unsigned radius, unsigned max_size,
                           const std::string& mode, std::uint64_t seed, std::uint64_t samples,
                           std::uint64_t budget, std::uint64_t start_cursor, unsigned workers) {
  SearchParams p;
  p.arena = parse_arena(arena);
  p.radius = radius;
  p.max_subset_size = max_size;
  p.mode = parse_mode(mode);
  p.seed = seed;
  p.samples = samples;
  p.budget = budget;
  p.start_cursor = start_cursor;
  p.workers = workers;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GGS group engine: wreath recursion, congruence quotients, unique-product searches";
  m.attr("__version__") = "0.1.0";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<GgsGroup>(m, "Group")
      .def(py::init([](unsigned p, std::vector<unsigned> e, std::size_t state_budget) {
             EngineOptions o;
             o.state_budget = state_budget;
             return define_ggs(p, std::move(e), o);
           }),
           py::arg("p"), py::arg("e"), py::arg("state_budget") = EngineOptions{}.state_budget)
      .def_property_readonly("p", &GgsGroup::degree)
      .def_property_readonly("e", [](const GgsGroup& G) { return G.vector().e; })
      .def("__repr__", [](const GgsGroup& G) { return "Group(" + to_string(G.vector()) + ")"; })
      .def("reduce", [](const GgsGroup& G, const std::string& w) { return to_string(parse_word(w, G.degree())); })
      .def("mul",
           [](const GgsGroup& G, const std::string& g, const std::string& h) {
             return to_string(mul(parse_word(g, G.degree()), parse_word(h, G.degree()), G));
           })
      .def("inv", [](const GgsGroup& G, const std::string& g) { return to_string(inv(parse_word(g, G.degree()), G)); })
      .def("is_identity", [](const GgsGroup& G, const std::string& g) { return is_identity(parse_word(g, G.degree()), G); })
      .def("equal",
           [](const GgsGroup& G, const std::string& g, const std::string& h) {
             return equal(parse_word(g, G.degree()), parse_word(h, G.degree()), G);
           })
      .def("act",
           [](const GgsGroup& G, const std::string& g, const std::string& v) {
             return to_string(act(parse_word(g, G.degree()), parse_vertex(v, G.degree()), G));
           })
      .def("section",
           [](const GgsGroup& G, const std::string& g, const std::string& v) {
             return to_string(section(parse_word(g, G.degree()), parse_vertex(v, G.degree()), G));
           })
      .def(
          "order",
          [](const GgsGroup& G, const std::string& g, std::uint64_t bound) {
            return order_up_to(parse_word(g, G.degree()), bound, G).order;
          },
          "Smallest k <= bound with g^k = 1, or None.")
      .def("portrait",
           [](const GgsGroup& G, const std::string& g, unsigned depth) {
             return canonical_key(parse_word(g, G.degree()), depth, G);
           })
      .def("theta",
           [](const GgsGroup& G, const std::string& g) {
             auto const t = theta(parse_word(g, G.degree()), G);
             return py::make_tuple(t.a_exp, t.b_exp);
           })
      .def("in_derived_kernel",
           [](const GgsGroup& G, const std::string& g) { return in_derived_kernel(parse_word(g, G.degree()), G); })
      .def("verify_relations", [](const GgsGroup& G) { return to_python(to_json(verify_generator_relations(G))); })
      .def(
          "ball",
          [](const GgsGroup& G, unsigned radius, const std::string& arena) {
            std::vector<std::string> out;
            for (auto const& w : ball(G, radius, parse_arena(arena)).elements) {
              out.push_back(to_string(w));
            }
            return out;
          },
          py::arg("radius"), py::arg("arena") = "full");

  m.def(
      "family_vector",
      [](unsigned p, std::int64_t lambda, bool require_compliant) {
        auto const f = family_vector(p, lambda, require_compliant);
        return py::make_tuple(f.vector.e, f.theorem_compliant);
      },
      py::arg("p"), py::arg("lam"), py::arg("require_compliant") = false);

  m.def(
      "quotient_order",
      [](const GgsGroup& G, unsigned n, std::size_t degree_budget) {
        return to_pyint(group_order(quotient_group(G, n, degree_budget)));
      },
      py::arg("group"), py::arg("n"), py::arg("degree_budget") = kDefaultDegreeBudget);
  m.def(
      "quotient_report",
      [](const GgsGroup& G, unsigned n, std::size_t degree_budget) {
        return to_python(to_json(quotient_report(G, n, degree_budget)));
      },
      py::arg("group"), py::arg("n"), py::arg("degree_budget") = kDefaultDegreeBudget);

  m.def("up_count", [](const GgsGroup& G, const std::vector<std::string>& A, const std::vector<std::string>& B) {
    return up_count(words(G, A), words(G, B), G);
  });
  m.def("extremal_elements", [](const GgsGroup& G, const std::vector<std::string>& A) {
    return extremal_elements(words(G, A), G);
  });

  auto search = [](bool up) {
    return [up](const GgsGroup& G, const std::string& arena, unsigned radius, unsigned max_size,
                const std::string& mode, std::uint64_t seed, std::uint64_t samples, std::uint64_t budget,
                std::uint64_t start_cursor, unsigned workers) {
      auto const p = search_params(arena, radius, max_size, mode, seed, samples, budget, start_cursor, workers);
      SearchReport r;
      {
        py::gil_scoped_release release;
        r = up ? up_search(G, p) : diffuse_search(G, p);
      }
      return to_python(to_json(r));
    };
  };
  for (auto [name, up] : {std::pair{"up_search", true}, std::pair{"diffuse_search", false}}) {
    m.def(name, search(up), py::arg("group"), py::arg("arena") = "kernel", py::arg("radius") = 3,
          py::arg("max_size") = 2, py::arg("mode") = "exhaustive", py::arg("seed") = 0, py::arg("samples") = 1000,
          py::arg("budget") = 0, py::arg("start_cursor") = 0, py::arg("workers") = 1);
  }
}
