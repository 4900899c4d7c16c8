#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "sdpcolor/analysis.hpp"
#include "sdpcolor/combined.hpp"
#include "sdpcolor/dimacs.hpp"
#include "sdpcolor/indset.hpp"
#include "sdpcolor/testkit.hpp"

namespace py = pybind11;
using namespace sdpcolor;

namespace {

Graph graph_from_pairs(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

std::vector<std::pair<Vertex, Vertex>> edge_pairs(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph coloring and independent sets via vector relaxations";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<Vertex>(), py::arg("n") = 0)
      .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             if (!g.contains(v)) throw py::index_error("vertex out of range");
             auto s = g.neighbors(v);
             return std::vector<Vertex>(s.begin(), s.end());
           })
      .def("has_edge", &Graph::has_edge)
      .def("edges", &edge_pairs)
      .def("average_degree", &Graph::average_degree)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("planted", [](Vertex n, int k, double p, std::uint64_t seed) {
    auto inst = planted_k_colorable(n, k, p, seed);
    return py::make_tuple(std::move(inst.graph), std::move(inst.classes));
  }, py::arg("n"), py::arg("k"), py::arg("p"), py::arg("seed") = 0);
  m.def("gnp", &random_gnp, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
  m.def("read_dimacs", [](const std::string& path) { return read_dimacs_file(path); });
  m.def("write_dimacs", [](const std::string& path, const Graph& g) { write_dimacs_file(path, g); });

  m.def("verify_coloring", [](const Graph& g, std::vector<int> c) {
    return c.size() == static_cast<std::size_t>(g.num_vertices()) && verify_coloring(g, Coloring(std::move(c)));
  });
  m.def("verify_independent_set", [](const Graph& g, std::vector<Vertex> s) {
    const auto set = make_vertex_set(s);
    return set.size() == s.size() && (set.empty() || (set.front() >= 0 && set.back() < g.num_vertices())) &&
           verify_independent_set(g, set);
  });

  m.def("combined_color_json", [](const Graph& g, int k, std::uint64_t seed, int repeats, double eps) {
    CombinedConfig cfg;
    cfg.seed = seed;
    cfg.repeats = repeats;
    cfg.eps = eps;
    py::gil_scoped_release release;
    return combined_result_json(combined_color(g, k, cfg));
  }, py::arg("graph"), py::arg("k"), py::arg("seed") = 0, py::arg("repeats") = 3, py::arg("eps") = 1e-3);

  m.def("independent_set", [](const Graph& g, double alpha, std::uint64_t seed, int trials) {
    AkOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    py::gil_scoped_release release;
    return ak_independent_set(g, alpha, opts);
  }, py::arg("graph"), py::arg("alpha"), py::arg("seed") = 0, py::arg("trials") = 64);

  m.def("alpha_k", &alpha_k_string, "Color-bound exponent as 'p/q'");
  m.def("alpha_k_value", &alpha_k_value);
  m.def("f_exponent", &f_exponent);
  m.def("wedge_probability", [](double beta, double c) { return wedge_probability_exact({beta, c}); });
  m.def("wedge_bounds", [](double beta, double c) {
    const auto b = wedge_bounds({beta, c});
    py::dict d;
    d["lower"] = b.lower;
    d["upper_claim"] = b.claim_applies ? py::cast(b.upper_claim) : py::none();
    d["upper_general"] = b.general_applies ? py::cast(b.upper_general) : py::none();
    d["best_upper"] = b.best_upper();
    return d;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
