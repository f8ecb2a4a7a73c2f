#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "wlvc/bounds.hpp"
#include "wlvc/dataset.hpp"
#include "wlvc/errors.hpp"
#include "wlvc/extraction.hpp"
#include "wlvc/fnn.hpp"
#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/io.hpp"
#include "wlvc/quotient.hpp"
#include "wlvc/shatter.hpp"
#include "wlvc/wl.hpp"

namespace py = pybind11;

namespace {

void bind_errors(py::module& m) {
  py::register_exception<wlvc::parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<wlvc::io_error>(m, "IoError", PyExc_IOError);
  py::register_exception<wlvc::internal_error>(m, "InternalError", PyExc_RuntimeError);
  py::register_exception<wlvc::precondition_error>(m, "PreconditionError", PyExc_ValueError);
}

void bind_dyadic(py::module& m) {
  py::class_<wlvc::Dyadic>(m, "Dyadic")
      .def(py::init<long long>(), py::arg("value") = 0)
      .def(py::init([](const std::string& mantissa, long long exponent) {
             return wlvc::Dyadic(wlvc::bigint(mantissa), exponent);
           }),
           py::arg("mantissa"), py::arg("exponent"))
      .def_property_readonly("mantissa", [](const wlvc::Dyadic& d) { return d.mantissa().str(); })
      .def_property_readonly("exponent", &wlvc::Dyadic::exponent)
      .def("is_zero", &wlvc::Dyadic::is_zero)
      .def("is_integer", &wlvc::Dyadic::is_integer)
      .def("to_double", &wlvc::Dyadic::to_double)
      .def("__float__", &wlvc::Dyadic::to_double)
      .def("__str__", &wlvc::Dyadic::str)
      .def("__repr__", [](const wlvc::Dyadic& d) { return "Dyadic(" + d.str() + ")"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self);
  m.def("pow2", &wlvc::Dyadic::pow2, py::arg("e"));
}

void bind_graph(py::module& m) {
  py::class_<wlvc::Graph>(m, "Graph")
      .def(py::init([](wlvc::Vertex n, const std::vector<wlvc::Edge>& edges, bool directed) {
             return wlvc::new_graph(n, edges, directed);
           }),
           py::arg("n"), py::arg("edges"), py::arg("directed") = false)
      .def(py::init([](wlvc::Vertex n, const std::vector<wlvc::Edge>& edges,
                       std::vector<std::uint32_t> labels, bool directed) {
             return wlvc::new_graph(n, edges, std::move(labels), directed);
           }),
           py::arg("n"), py::arg("edges"), py::arg("labels"), py::arg("directed") = false)
      .def_readonly("n", &wlvc::Graph::n)
      .def_readonly("directed", &wlvc::Graph::directed)
      .def_readwrite("labels", &wlvc::Graph::labels)
      .def_readwrite("feat", &wlvc::Graph::feat)
      .def_property_readonly("adj", [](const wlvc::Graph& g) { return g.adj; })
      .def("degree", &wlvc::Graph::degree, py::arg("v"))
      .def("edge_count", &wlvc::Graph::edge_count)
      .def("edges", &wlvc::Graph::edges)
      .def("__repr__", [](const wlvc::Graph& g) {
        return "Graph(n=" + std::to_string(g.n) + ", m=" + std::to_string(g.edge_count()) + ")";
      });
  m.def("permute", &wlvc::permute, py::arg("g"), py::arg("perm"));
  m.def(
      "disjoint_union",
      [](const std::vector<wlvc::Graph>& gs) {
        std::vector<wlvc::Vertex> offsets;
        wlvc::Graph g = wlvc::disjoint_union(gs, &offsets);
        return py::make_tuple(g, offsets);
      },
      py::arg("graphs"));
  m.def("as_undirected", &wlvc::as_undirected, py::arg("g"));
  m.def("gen_tree_family", &wlvc::gen_tree_family, py::arg("k"), py::arg("directed") = false);
}

void bind_wl(py::module& m) {
  m.def(
      "count_distinguishable",
      [](const std::vector<wlvc::Graph>& gs, std::size_t L, bool use_labels,
         bool use_edge_labels, std::size_t threads) {
        wlvc::WlOptions o;
        o.use_labels = use_labels;
        o.use_edge_labels = use_edge_labels;
        o.threads = threads;
        return wlvc::count_distinguishable(gs, L, o);
      },
      py::arg("graphs"), py::arg("L"), py::arg("use_labels") = true,
      py::arg("use_edge_labels") = false, py::arg("threads") = 1);
  m.def(
      "count_distinguishable_upto",
      [](const std::vector<wlvc::Graph>& gs, std::size_t L, bool use_labels,
         bool use_edge_labels, std::size_t threads) {
        wlvc::WlOptions o;
        o.use_labels = use_labels;
        o.use_edge_labels = use_edge_labels;
        o.threads = threads;
        return wlvc::count_distinguishable_upto(gs, L, o);
      },
      py::arg("graphs"), py::arg("L"), py::arg("use_labels") = true,
      py::arg("use_edge_labels") = false, py::arg("threads") = 1);
  m.def(
      "stable_coloring",
      [](const wlvc::Graph& g, std::size_t threads) {
        auto [col, iters] = wlvc::stable_coloring(g, threads);
        return py::make_tuple(col.c, iters);
      },
      py::arg("g"), py::arg("threads") = 1);
  m.def("color_complexity", &wlvc::color_complexity, py::arg("g"), py::arg("threads") = 1);
  m.def("wlk_distinguishes", &wlvc::wlk_distinguishes, py::arg("a"), py::arg("b"), py::arg("k"),
        py::arg("threads") = 1);
}

void bind_quotient(py::module& m) {
  py::class_<wlvc::QuotientGraph>(m, "QuotientGraph")
      .def_readonly("k", &wlvc::QuotientGraph::k)
      .def_readonly("class_of", &wlvc::QuotientGraph::class_of)
      .def_readonly("size", &wlvc::QuotientGraph::size)
      .def_readonly("rep", &wlvc::QuotientGraph::rep)
      .def_readonly("label", &wlvc::QuotientGraph::label)
      .def_readonly("w", &wlvc::QuotientGraph::w)
      .def("__repr__", [](const wlvc::QuotientGraph& q) {
        return "QuotientGraph(k=" + std::to_string(q.k) + ")";
      });
  m.def("reduce", py::overload_cast<const wlvc::Graph&>(&wlvc::reduce), py::arg("g"));
  m.def("eval_on_quotient",
        py::overload_cast<const wlvc::GnnSpec&, const wlvc::QuotientGraph&, const wlvc::Graph&>(
            &wlvc::eval_on_quotient),
        py::arg("spec"), py::arg("quotient"), py::arg("g"));
  m.def("eval_on_quotient",
        py::overload_cast<const wlvc::GnnSpec&, const wlvc::QuotientGraph&>(
            &wlvc::eval_on_quotient),
        py::arg("spec"), py::arg("quotient"));
}

void bind_gnn(py::module& m) {
  py::class_<wlvc::GnnSpec>(m, "GnnSpec")
      .def_static(
          "from_json",
          [](const std::string& text) { return wlvc::spec_from_json(wlvc::json::parse(text)); },
          py::arg("text"))
      .def("to_json", [](const wlvc::GnnSpec& s) { return wlvc::spec_to_json(s).dump(); })
      .def_property_readonly("layers", [](const wlvc::GnnSpec& s) { return s.layers.size(); })
      .def_property_readonly("input_width", [](const wlvc::GnnSpec& s) { return s.input_width; })
      .def("__repr__", [](const wlvc::GnnSpec& s) {
        return "GnnSpec(L=" + std::to_string(s.layers.size()) + ")";
      });
  m.def("read_spec", &wlvc::read_spec_json, py::arg("path"));
  m.def("write_spec", &wlvc::write_spec_json, py::arg("spec"), py::arg("path"));
  m.def("gnn_eval", &wlvc::gnn_eval, py::arg("spec"), py::arg("g"), py::arg("threads") = 1);
  m.def("param_count", py::overload_cast<const wlvc::GnnSpec&>(&wlvc::param_count),
        py::arg("spec"));
  m.def("param_count_uniform", &wlvc::param_count_uniform, py::arg("d"), py::arg("L"));
  m.def("spec_bitlength", &wlvc::spec_bitlength, py::arg("spec"));
  m.def("expand_bitlength", &wlvc::expand_bitlength, py::arg("spec"), py::arg("k"));
}

void bind_fnn(py::module& m) {
  py::class_<wlvc::FnnDag>(m, "FnnDag")
      .def("node_count", &wlvc::FnnDag::node_count)
      .def("edge_count", &wlvc::FnnDag::edge_count)
      .def("size", &wlvc::FnnDag::size)
      .def_readonly("inputs", &wlvc::FnnDag::inputs)
      .def_readonly("outputs", &wlvc::FnnDag::outputs);
  py::class_<wlvc::UnrolledFnn>(m, "UnrolledFnn")
      .def_readonly("dag", &wlvc::UnrolledFnn::dag)
      .def("__repr__", [](const wlvc::UnrolledFnn& u) {
        return "UnrolledFnn(nodes=" + std::to_string(u.dag.node_count()) + ")";
      });
  m.def("unroll", &wlvc::unroll, py::arg("spec"), py::arg("g"));
  m.def("unroll_multi", &wlvc::unroll_multi, py::arg("spec"), py::arg("graphs"));
  m.def("unroll_inputs", &wlvc::unroll_inputs, py::arg("unrolled"), py::arg("spec"),
        py::arg("graphs"));
  m.def("fnn_eval", &wlvc::fnn_eval, py::arg("dag"), py::arg("inputs"), py::arg("threads") = 1);
  m.def(
      "collapse_fnn",
      [](const wlvc::UnrolledFnn& u, const std::vector<wlvc::Graph>& gs, std::size_t threads) {
        std::vector<wlvc::Coloring> stables;
        stables.reserve(gs.size());
        for (const auto& g : gs) stables.push_back(wlvc::stable_coloring(g, threads).first);
        return wlvc::collapse_fnn(u, gs, stables);
      },
      py::arg("unrolled"), py::arg("graphs"), py::arg("threads") = 1);
  m.def("nodes_at_layer", &wlvc::nodes_at_layer, py::arg("unrolled"), py::arg("t"));
}

void bind_extraction(py::module& m) {
  py::class_<wlvc::ExtractionLedger>(m, "ExtractionLedger")
      .def_readonly("n", &wlvc::ExtractionLedger::n)
      .def_readonly("x", &wlvc::ExtractionLedger::x)
      .def_readonly("rho_x", &wlvc::ExtractionLedger::rho_x)
      .def_readonly("rho_k", &wlvc::ExtractionLedger::rho_k)
      .def_readonly("a", &wlvc::ExtractionLedger::a)
      .def_readonly("b", &wlvc::ExtractionLedger::b)
      .def_readonly("c", &wlvc::ExtractionLedger::c)
      .def_readonly("codes", &wlvc::ExtractionLedger::codes)
      .def_readonly("scale", &wlvc::ExtractionLedger::scale);
  py::class_<wlvc::ExtractionForest>(m, "ExtractionForest")
      .def_readonly("graph", &wlvc::ExtractionForest::graph)
      .def_readonly("role", &wlvc::ExtractionForest::role)
      .def_readonly("comp", &wlvc::ExtractionForest::comp)
      .def_readonly("comp_code", &wlvc::ExtractionForest::comp_code)
      .def_readonly("k", &wlvc::ExtractionForest::k)
      .def_readonly("n", &wlvc::ExtractionForest::n)
      .def_readonly("scale", &wlvc::ExtractionForest::scale);
  py::class_<wlvc::ExtractionReport>(m, "ExtractionReport")
      .def_readonly("n", &wlvc::ExtractionReport::n)
      .def_readonly("scale", &wlvc::ExtractionReport::scale)
      .def_readonly("checks", &wlvc::ExtractionReport::checks)
      .def_readonly("ok", &wlvc::ExtractionReport::ok)
      .def_readonly("failures", &wlvc::ExtractionReport::failures);
  m.def("rho", &wlvc::rho, py::arg("x"));
  m.def("rho_shift", &wlvc::rho_shift, py::arg("x"), py::arg("k"));
  m.def("ledger", &wlvc::ledger, py::arg("x"));
  m.def("code_set", &wlvc::code_set, py::arg("k"), py::arg("n"));
  m.def("build_extraction_gnn", &wlvc::build_extraction_gnn, py::arg("x"), py::arg("scale"));
  m.def("gen_extraction_forest", &wlvc::gen_extraction_forest, py::arg("k"), py::arg("n"),
        py::arg("scale"));
  m.def("verify_bit_extraction", &wlvc::verify_bit_extraction, py::arg("n"),
        py::arg("scale") = 0, py::arg("threads") = 1, py::arg("budget") = 4);
}

void bind_shatter(py::module& m) {
  py::class_<wlvc::ShatterReadout>(m, "ShatterReadout")
      .def_readonly("iters", &wlvc::ShatterReadout::iters)
      .def_readonly("requested_iters", &wlvc::ShatterReadout::requested_iters)
      .def_readonly("base", &wlvc::ShatterReadout::base)
      .def_property_readonly("codes", [](const wlvc::ShatterReadout& r) {
        std::vector<std::string> out;
        out.reserve(r.codes.size());
        for (const auto& c : r.codes) out.push_back(c.str());
        return out;
      });
  m.def("build_histogram_shatter", &wlvc::build_histogram_shatter, py::arg("graphs"),
        py::arg("L"), py::arg("threads") = 1, py::arg("max_members") = 32);
  m.def(
      "shatter_code",
      [](const wlvc::ShatterReadout& r, const wlvc::Graph& g,
         std::size_t threads) -> std::optional<std::string> {
        auto code = wlvc::shatter_code(r, g, threads);
        if (!code) return std::nullopt;
        return code->str();
      },
      py::arg("readout"), py::arg("g"), py::arg("threads") = 1);
  m.def("shatter_eval", &wlvc::shatter_eval, py::arg("readout"), py::arg("subset"), py::arg("g"),
        py::arg("threads") = 1);
  m.def(
      "verify_shatter",
      [](const std::vector<wlvc::Graph>& gs, std::size_t L, std::size_t threads) {
        std::uint64_t bad = 0;
        const bool ok = wlvc::verify_shatter(gs, L, threads, &bad);
        return py::make_tuple(ok, bad);
      },
      py::arg("graphs"), py::arg("L"), py::arg("threads") = 1);
}

void bind_bounds(py::module& m) {
  py::class_<wlvc::VcUpper>(m, "VcUpper")
      .def_readonly("m_star", &wlvc::VcUpper::m_star)
      .def_readonly("satisfied", &wlvc::VcUpper::satisfied)
      .def_readonly("floor_m", &wlvc::VcUpper::floor_m)
      .def("__repr__", [](const wlvc::VcUpper& v) {
        return "VcUpper(m_star=" + std::to_string(v.m_star) + ")";
      });
  auto params = [](std::uint64_t d, std::uint64_t L, std::uint64_t p, std::uint64_t delta,
                   std::uint64_t u) {
    wlvc::BoundParams b;
    b.d = d;
    b.L = L;
    b.p = p;
    b.delta = delta;
    b.u = u;
    return b;
  };
  m.def(
      "vc_upper",
      [params](std::uint64_t d, std::uint64_t L, std::uint64_t p, std::uint64_t delta,
               std::uint64_t u) { return wlvc::vc_upper(params(d, L, p, delta, u)); },
      py::arg("d"), py::arg("L"), py::arg("p"), py::arg("delta"), py::arg("u"));
  m.def(
      "vc_upper_scan",
      [params](std::uint64_t d, std::uint64_t L, std::uint64_t p, std::uint64_t delta,
               std::uint64_t u, std::uint64_t cap) {
        return wlvc::vc_upper_scan(params(d, L, p, delta, u), cap);
      },
      py::arg("d"), py::arg("L"), py::arg("p"), py::arg("delta"), py::arg("u"),
      py::arg("cap") = (1u << 20));
  m.def(
      "k_bound",
      [params](std::uint64_t m, std::uint64_t d, std::uint64_t L, std::uint64_t p,
               std::uint64_t delta, std::uint64_t u) {
        const wlvc::KBound kb = wlvc::k_bound(m, params(d, L, p, delta, u));
        return py::make_tuple(static_cast<double>(kb.log2_rhs), kb.side_ok);
      },
      py::arg("m"), py::arg("d"), py::arg("L"), py::arg("p"), py::arg("delta"), py::arg("u"));
  m.def(
      "lemma17_bound",
      [](std::uint64_t r, std::uint64_t degree, std::uint64_t vars) {
        return static_cast<double>(wlvc::lemma17_bound(r, degree, vars));
      },
      py::arg("r"), py::arg("degree"), py::arg("vars"));
  m.def("sample_complexity", &wlvc::sample_complexity, py::arg("epsilon"),
        py::arg("delta_conf"), py::arg("vcdim"));
  m.def(
      "regime",
      [](bool uniform, std::optional<std::uint64_t> bitlength,
         std::optional<std::uint64_t> color_bound) {
        wlvc::RegimeQuery q;
        q.uniform = uniform;
        q.bitlength = bitlength;
        q.color_bound = color_bound;
        const wlvc::RegimeAnswer a = wlvc::regime(q);
        return py::make_tuple(a.name, a.bound);
      },
      py::arg("uniform") = true, py::arg("bitlength") = std::nullopt,
      py::arg("color_bound") = std::nullopt);
  m.def("asymptotic_class", &wlvc::asymptotic_class, py::arg("delta"));
}

void bind_io(py::module& m) {
  m.def(
      "graph_from_json",
      [](const std::string& text) { return wlvc::graph_from_json(wlvc::json::parse(text)); },
      py::arg("text"));
  m.def(
      "graph_to_json", [](const wlvc::Graph& g) { return wlvc::graph_to_json(g).dump(); },
      py::arg("g"));
  m.def("read_graph_set", &wlvc::read_graph_set_json, py::arg("path"));
  m.def("write_graph_set", &wlvc::write_graph_set_json, py::arg("graphs"), py::arg("path"));
}

void bind_dataset(py::module& m) {
  py::class_<wlvc::TuDataset>(m, "TuDataset")
      .def_readonly("name", &wlvc::TuDataset::name)
      .def_readonly("graphs", &wlvc::TuDataset::graphs)
      .def_readonly("graph_labels", &wlvc::TuDataset::graph_labels)
      .def_readonly("has_node_labels", &wlvc::TuDataset::has_node_labels)
      .def_readonly("has_edge_labels", &wlvc::TuDataset::has_edge_labels)
      .def("__repr__", [](const wlvc::TuDataset& ds) {
        return "TuDataset(" + ds.name + ", " + std::to_string(ds.graphs.size()) + " graphs)";
      });
  m.def("parse_tud", py::overload_cast<const std::string&>(&wlvc::parse_tud), py::arg("dir"));
  m.def("parse_tud",
        py::overload_cast<const std::string&, const std::string&>(&wlvc::parse_tud),
        py::arg("dir"), py::arg("name"));
  m.def(
      "fetch_dataset",
      [](const std::string& name, const std::string& root, const std::string& base_url,
         bool offline, int timeout) {
        wlvc::CacheConfig cfg;
        cfg.root = root;
        if (!base_url.empty()) cfg.base_url = base_url;
        cfg.offline = offline;
        cfg.timeout_seconds = timeout;
        return wlvc::fetch_dataset(name, cfg);
      },
      py::arg("name"), py::arg("root") = "", py::arg("base_url") = "",
      py::arg("offline") = false, py::arg("timeout") = 60);
  m.def("default_cache_root", &wlvc::default_cache_root);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact Weisfeiler-Leman / GNN / VC-bound toolkit";
  m.attr("__version__") = "1.0.0";

  bind_errors(m);
  bind_dyadic(m);
  bind_graph(m);
  bind_wl(m);
  bind_quotient(m);
  bind_gnn(m);
  bind_fnn(m);
  bind_extraction(m);
  bind_shatter(m);
  bind_bounds(m);
  bind_io(m);
  bind_dataset(m);
}
