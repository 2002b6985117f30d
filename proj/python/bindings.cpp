#include <optional>
#include <sstream>
#include <stdexcept>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "keygraph/cli.hpp"
#include "keygraph/connectivity.hpp"
#include "keygraph/experiments.hpp"
#include "keygraph/model.hpp"
#include "keygraph/network_io.hpp"
#include "keygraph/sampler.hpp"
#include "keygraph/threshold.hpp"

namespace py = pybind11;
using namespace keygraph;

namespace {

std::vector<std::pair<int, int>> edge_pairs(std::span<const Edge> edges) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.emplace_back(e.u, e.v);
    return out;
}

Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

std::string csv_of(const std::vector<ExperimentResult>& results) {
    std::ostringstream out;
    write_csv(out, results);
    return out.str();
}

std::vector<ExperimentResult> run_all(const std::vector<ExperimentSpec>& specs) {
    std::vector<ExperimentResult> results;
    py::gil_scoped_release release;
    for (const auto& s : specs) results.push_back(run_experiment(s));
    return results;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random key graphs intersected with on/off channels: probabilities, sampling and connectivity.";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<int, std::vector<double>, std::vector<int>, int, double>(), py::arg("n"), py::arg("mu"),
             py::arg("K"), py::arg("P"), py::arg("alpha"))
        .def_property_readonly("n", &ModelParams::node_count)
        .def_property_readonly("P", &ModelParams::pool_size)
        .def_property_readonly("alpha", &ModelParams::channel_on_prob)
        .def_property_readonly("mu", [](const ModelParams& p) {
            return std::vector<double>(p.class_probs().begin(), p.class_probs().end());
        })
        .def_property_readonly("K", [](const ModelParams& p) {
            return std::vector<int>(p.ring_sizes().begin(), p.ring_sizes().end());
        })
        .def("with_alpha", &ModelParams::with_channel_on_prob, py::arg("alpha"))
        .def("with_ring_sizes", &ModelParams::with_ring_sizes, py::arg("K"))
        .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; })
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream s;
            s << "ModelParams(n=" << p.node_count() << ", classes=" << p.class_count() << ", P=" << p.pool_size()
              << ", alpha=" << p.channel_on_prob() << ")";
            return s.str();
        });

    m.def("key_overlap_prob", &key_overlap_prob, py::arg("P"), py::arg("a"), py::arg("b"));
    m.def("key_edge_prob", &key_edge_prob, py::arg("params"), py::arg("i"), py::arg("j"));
    m.def("class_key_edge_prob", &class_key_edge_prob, py::arg("params"), py::arg("i"));
    m.def("class_edge_prob", &class_edge_prob, py::arg("params"), py::arg("i"));
    m.def("gamma_deviation", &gamma_deviation, py::arg("params"), py::arg("k"));
    m.def("scaling_report", [](const ModelParams& p, int k) {
        const ScalingReport r = scaling_report(p, k);
        py::dict d;
        d["admissible"] = r.admissible;
        d["gamma"] = r.gamma;
        d["lambda1"] = r.lambda1_exact;
        d["lambda1_asymptotic"] = r.lambda1_asymptotic;
        d["P_over_n"] = r.pool_per_node;
        d["Kr_over_P"] = r.max_ring_per_pool;
        d["Kr_over_K1_over_ln_n"] = r.ring_spread_per_log_n;
        return d;
    }, py::arg("params"), py::arg("k") = 1);

    m.def("solve_threshold",
          [](int n, int pool, std::vector<double> mu, double alpha, int k, std::optional<std::vector<int>> offsets,
             std::optional<std::vector<int>> fixed_tail) {
              if (offsets && fixed_tail) throw std::invalid_argument("give offsets or fixed_tail, not both");
              ThresholdQuery q;
              q.n = n;
              q.pool = pool;
              q.alpha = alpha;
              q.k = k;
              if (fixed_tail) {
                  q.rule = KeyProfileRule::fixed_tail(*fixed_tail);
              } else if (offsets) {
                  q.rule = KeyProfileRule::offsets(*offsets);
              } else {
                  q.rule = KeyProfileRule::offsets(std::vector<int>(mu.size(), 0));
              }
              q.class_weights = std::move(mu);
              const ThresholdResult r = solve_threshold(q);
              py::dict d;
              d["satisfied"] = r.satisfied;
              d["K1_min"] = r.satisfied ? py::object(py::int_(r.k1_min)) : py::object(py::none());
              d["K"] = r.ring_sizes;
              d["lambda1"] = r.lambda1;
              d["rhs"] = r.rhs;
              return d;
          },
          py::arg("n"), py::arg("P"), py::arg("mu"), py::arg("alpha"), py::arg("k") = 1,
          py::arg("offsets") = py::none(), py::arg("fixed_tail") = py::none());

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"))
        .def_static("complete", &Graph::complete, py::arg("n"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree, py::arg("v"))
        .def("neighbors", [](const Graph& g, int v) {
            if (v < 0 || v >= g.node_count()) throw py::index_error("node out of range");
            return std::vector<int>(g.neighbors(v).begin(), g.neighbors(v).end());
        }, py::arg("v"))
        .def("edges", [](const Graph& g) { return edge_pairs(g.edges()); })
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

    py::class_<SampledNetwork>(m, "Network")
        .def_readonly("params", &SampledNetwork::params)
        .def_readonly("classes", &SampledNetwork::classes)
        .def_readonly("keyrings", &SampledNetwork::keyrings)
        .def_readonly("graph", &SampledNetwork::graph)
        .def("to_text", [](const SampledNetwork& net) {
            std::ostringstream out;
            write_network(out, net);
            return out.str();
        })
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return read_network(in);
        }, py::arg("text"));

    m.def("sample_network", [](const ModelParams& p, std::uint64_t seed, std::uint64_t trial) {
        py::gil_scoped_release release;
        return sample_network(p, {seed, trial});
    }, py::arg("params"), py::arg("seed") = 0, py::arg("trial") = 0);

    m.def("min_degree", &min_degree, py::arg("graph"));
    m.def("is_connected", &is_connected, py::arg("graph"));
    m.def("vertex_connectivity", [](const Graph& g) {
        py::gil_scoped_release release;
        const VertexCut c = vertex_connectivity(g);
        return std::make_pair(c.kappa, c.nodes);
    }, py::arg("graph"), "Returns (kappa, minimum vertex cut).");
    m.def("is_k_connected", &is_k_connected, py::arg("graph"), py::arg("k"),
          py::call_guard<py::gil_scoped_release>());
    m.def("analyze_connectivity", [](const Graph& g) {
        ConnectivityReport r;
        {
            py::gil_scoped_release release;
            r = analyze_connectivity(g);
        }
        py::dict d;
        d["min_degree"] = r.min_degree;
        d["vertex_connectivity"] = r.vertex_connectivity;
        d["min_vertex_cut"] = r.min_vertex_cut;
        d["connected"] = r.is_connected;
        d["components"] = r.component_count;
        return d;
    }, py::arg("graph"));
    m.def("delete_and_check", [](const Graph& g, const std::vector<int>& victims) {
        return delete_and_check(g, victims);
    }, py::arg("graph"), py::arg("victims"));

    m.def("wilson_half_width", &wilson_half_width, py::arg("successes"), py::arg("trials"),
          py::arg("z") = 1.959963984540054);

    m.def("run_spec", [](const std::string& json_text, std::optional<std::uint64_t> seed,
                         std::optional<int> threads) {
        auto specs = parse_experiment_specs(json_text);
        for (auto& s : specs) {
            if (seed) s.master_seed = *seed;
            if (threads) s.threads = *threads;
        }
        return csv_of(run_all(specs));
    }, py::arg("json_text"), py::arg("seed") = py::none(), py::arg("threads") = py::none(),
       "Runs every experiment in a JSON spec and returns the CSV text.");

    m.def("figure_csv", [](int figure, std::optional<int> n, std::optional<int> pool, std::optional<int> trials,
                           std::optional<std::uint64_t> seed, std::optional<int> threads) {
        return csv_of(run_all(figure_experiments(figure, {n, pool, trials, seed, threads})));
    }, py::arg("figure"), py::arg("n") = py::none(), py::arg("P") = py::none(), py::arg("trials") = py::none(),
       py::arg("seed") = py::none(), py::arg("threads") = py::none());

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"keygraph"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line interface in-process; returns (exit code, stdout, stderr).");

    m.attr("CSV_HEADER") = kCsvHeader;
    m.attr("__version__") = code_version().substr(code_version().find(' ') + 1);
}
