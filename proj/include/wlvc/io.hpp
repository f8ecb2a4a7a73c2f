#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/quotient.hpp"

namespace wlvc {

using json = nlohmann::json;

// Graph schema (version 1):
//   {version, n, directed, edges:[[u,v],...], vertex_labels?, edge_labels?,
//    features?}
// Writes are canonical: undirected edges appear once as u < v in sorted
// order, edge_labels parallel to edges. Malformed input throws parse_error;
// file-system trouble throws io_error.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);
void write_graph_json(const Graph& g, const std::string& path);
Graph read_graph_json(const std::string& path);

// A set file is {version, graphs:[...]}; a bare graph object reads as a
// singleton set.
json graph_set_to_json(const std::vector<Graph>& gs);
std::vector<Graph> graph_set_from_json(const json& j);
void write_graph_set_json(const std::vector<Graph>& gs, const std::string& path);
std::vector<Graph> read_graph_set_json(const std::string& path);

// Dyadics serialize as {"m": "<decimal mantissa>", "e": exponent}.
json dyadic_to_json(const Dyadic& d);
Dyadic dyadic_from_json(const json& j);

// Known activations serialize by name (identity, sign, relu, lsig, A, or
// {"name": "A_scaled", "M": ...}); anything else as inline {breaks, pieces}.
json activation_to_json(const PiecewisePoly& a);
PiecewisePoly activation_from_json(const json& j);

json spec_to_json(const GnnSpec& s);
GnnSpec spec_from_json(const json& j);
void write_spec_json(const GnnSpec& s, const std::string& path);
GnnSpec read_spec_json(const std::string& path);

json quotient_to_json(const QuotientGraph& q);

// format "json" writes the report (plus a generated_at stamp unless
// with_timestamp is false); "csv" expects {"columns": [...], "rows": [[...]]}
// and escapes fields per RFC 4180.
std::string timestamp_utc();  // ISO-8601 UTC, second resolution

void write_report(const json& report, const std::string& path, const std::string& format,
                  bool with_timestamp = true);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wlvc
