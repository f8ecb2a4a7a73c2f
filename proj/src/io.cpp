#include "wlvc/io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <utility>

#include "wlvc/activation.hpp"
#include "wlvc/errors.hpp"

namespace wlvc {

namespace {

json must_get(const json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end())
    throw parse_error(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

std::uint64_t get_nat(const json& j, const char* key, const char* what) {
  const json v = must_get(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw parse_error(std::string(what) + ": \"" + key + "\" must be a natural number");
  return v.get<std::uint64_t>();
}

void check_version(const json& j, const char* what) {
  if (get_nat(j, "version", what) != 1)
    throw parse_error(std::string(what) + ": unsupported schema version");
}

std::string iso_timestamp() { return timestamp_utc(); }

}  // namespace

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const json& report) {
  if (!report.contains("columns") || !report.contains("rows"))
    throw precondition_error("write_report: csv needs \"columns\" and \"rows\"");
  const json& cols = report["columns"];
  const json& rows = report["rows"];
  if (!cols.is_array() || !rows.is_array())
    throw precondition_error("write_report: \"columns\" and \"rows\" must be arrays");
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
  os << '\n';
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != cols.size())
      throw precondition_error("write_report: row width differs from the column count");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_json_file: cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("read_json_file: " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("write_text_file: cannot open " + path);
  out << text;
  if (!out) throw io_error("write_text_file: write failed on " + path);
}

json graph_to_json(const Graph& g) {
  validate(g);
  json j;
  j["version"] = 1;
  j["n"] = g.n;
  j["directed"] = g.directed;
  json edges = json::array();
  json elabs = json::array();
  for (Vertex u = 0; u < g.n; ++u)
    for (std::size_t i = 0; i < g.adj[u].size(); ++i) {
      const Vertex v = g.adj[u][i];
      if (!g.directed && v < u) continue;
      edges.push_back({u, v});
      if (g.has_edge_labels()) elabs.push_back(g.elab[u][i]);
    }
  j["edges"] = std::move(edges);
  if (g.has_labels()) j["vertex_labels"] = g.labels;
  if (g.has_edge_labels()) j["edge_labels"] = std::move(elabs);
  if (g.has_features()) j["features"] = g.feat;
  return j;
}

Graph graph_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("graph json: not an object");
  check_version(j, "graph json");
  Graph g;
  const std::uint64_t n = get_nat(j, "n", "graph json");
  if (n > 0xffffffffull) throw parse_error("graph json: n too large");
  g.n = static_cast<Vertex>(n);
  g.directed = j.value("directed", false);
  const json edges = must_get(j, "edges", "graph json");
  if (!edges.is_array()) throw parse_error("graph json: \"edges\" must be an array");
  const bool has_elab = j.contains("edge_labels");
  if (has_elab &&
      (!j["edge_labels"].is_array() || j["edge_labels"].size() != edges.size()))
    throw parse_error("graph json: \"edge_labels\" must parallel \"edges\"");

  std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> rows(g.n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned())
      throw parse_error("graph json: edge " + std::to_string(i) + " is not a [u, v] pair");
    const std::uint64_t u = e[0].get<std::uint64_t>(), v = e[1].get<std::uint64_t>();
    if (u >= g.n || v >= g.n)
      throw parse_error("graph json: endpoint out of range in edge " + std::to_string(i));
    if (u == v) throw parse_error("graph json: self-loop in edge " + std::to_string(i));
    const std::uint32_t lab = has_elab ? j["edge_labels"][i].get<std::uint32_t>() : 0;
    rows[u].emplace_back(static_cast<Vertex>(v), lab);
    if (!g.directed) rows[v].emplace_back(static_cast<Vertex>(u), lab);
  }
  g.adj.resize(g.n);
  if (has_elab) g.elab.resize(g.n);
  for (Vertex v = 0; v < g.n; ++v) {
    std::sort(rows[v].begin(), rows[v].end());
    for (const auto& [w, lab] : rows[v]) {
      if (!g.adj[v].empty() && g.adj[v].back() == w)
        throw parse_error("graph json: duplicate edge at vertex " + std::to_string(v));
      g.adj[v].push_back(w);
      if (has_elab) g.elab[v].push_back(lab);
    }
  }
  if (j.contains("vertex_labels")) {
    const json& vl = j["vertex_labels"];
    if (!vl.is_array() || vl.size() != g.n)
      throw parse_error("graph json: \"vertex_labels\" must list one label per vertex");
    for (const json& l : vl) g.labels.push_back(l.get<std::uint32_t>());
  }
  if (j.contains("features")) {
    const json& fe = j["features"];
    if (!fe.is_array() || fe.size() != g.n)
      throw parse_error("graph json: \"features\" must list one row per vertex");
    for (const json& row : fe) {
      if (!row.is_array()) throw parse_error("graph json: feature rows must be arrays");
      std::vector<std::uint8_t> r;
      for (const json& b : row) {
        const std::uint64_t v = b.get<std::uint64_t>();
        if (v > 1) throw parse_error("graph json: features must be 0/1");
        r.push_back(static_cast<std::uint8_t>(v));
      }
      g.feat.push_back(std::move(r));
    }
  }
  try {
    validate(g);
  } catch (const precondition_error& e) {
    throw parse_error(std::string("graph json: ") + e.what());
  }
  return g;
}

void write_graph_json(const Graph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g).dump(2) + "\n");
}

Graph read_graph_json(const std::string& path) { return graph_from_json(read_json_file(path)); }

json graph_set_to_json(const std::vector<Graph>& gs) {
  json j;
  j["version"] = 1;
  json arr = json::array();
  for (const Graph& g : gs) arr.push_back(graph_to_json(g));
  j["graphs"] = std::move(arr);
  return j;
}

std::vector<Graph> graph_set_from_json(const json& j) {
  if (j.is_object() && j.contains("graphs")) {
    check_version(j, "graph set json");
    if (!j["graphs"].is_array()) throw parse_error("graph set json: \"graphs\" must be an array");
    std::vector<Graph> gs;
    for (const json& gj : j["graphs"]) gs.push_back(graph_from_json(gj));
    return gs;
  }
  return {graph_from_json(j)};
}

void write_graph_set_json(const std::vector<Graph>& gs, const std::string& path) {
  write_text_file(path, graph_set_to_json(gs).dump(2) + "\n");
}

std::vector<Graph> read_graph_set_json(const std::string& path) {
  return graph_set_from_json(read_json_file(path));
}

json dyadic_to_json(const Dyadic& d) {
  return json{{"m", d.mantissa().str()}, {"e", d.exponent()}};
}

Dyadic dyadic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("e"))
    throw parse_error("dyadic json: expected {\"m\", \"e\"}");
  if (!j["m"].is_string() || !j["e"].is_number_integer())
    throw parse_error("dyadic json: \"m\" must be a decimal string and \"e\" an integer");
  try {
    return Dyadic(bigint(j["m"].get<std::string>()), j["e"].get<long long>());
  } catch (const std::exception& e) {
    throw parse_error(std::string("dyadic json: bad mantissa: ") + e.what());
  }
}

namespace {

DyVec dyvec_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw parse_error(std::string(what) + ": expected an array");
  DyVec v;
  for (const json& e : j) v.push_back(dyadic_from_json(e));
  return v;
}

json dyvec_to_json(const DyVec& v) {
  json a = json::array();
  for (const Dyadic& d : v) a.push_back(dyadic_to_json(d));
  return a;
}

DyMat dymat_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw parse_error(std::string(what) + ": expected an array of rows");
  DyMat m;
  for (const json& row : j) m.push_back(dyvec_from_json(row, what));
  return m;
}

json dymat_to_json(const DyMat& m) {
  json a = json::array();
  for (const DyVec& row : m) a.push_back(dyvec_to_json(row));
  return a;
}

// power-of-two scale of a scaled bump, recovered from its third break
bool bump_scale(const PiecewisePoly& a, std::uint64_t* m) {
  if (a.breaks.size() != 4) return false;
  const Dyadic& b = a.breaks[2];
  if (b.sign() <= 0 || b.mantissa() != 1 || b.exponent() < 0 || b.exponent() > 62) return false;
  *m = std::uint64_t{1} << b.exponent();
  return same_activation(a, act_bump_scaled(*m));
}

}  // namespace

json activation_to_json(const PiecewisePoly& a) {
  if (same_activation(a, act_identity())) return "identity";
  if (same_activation(a, act_sign())) return "sign";
  if (same_activation(a, act_relu())) return "relu";
  if (same_activation(a, act_lsig())) return "lsig";
  if (same_activation(a, act_bump())) return "A";
  std::uint64_t m = 0;
  if (bump_scale(a, &m)) return json{{"name", "A_scaled"}, {"M", m}};
  json j;
  j["breaks"] = dyvec_to_json(a.breaks);
  json pieces = json::array();
  for (const DyVec& p : a.pieces) pieces.push_back(dyvec_to_json(p));
  j["pieces"] = std::move(pieces);
  return j;
}

PiecewisePoly activation_from_json(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "identity") return act_identity();
    if (name == "sign") return act_sign();
    if (name == "relu") return act_relu();
    if (name == "lsig") return act_lsig();
    if (name == "A") return act_bump();
    throw parse_error("activation json: unknown name \"" + name + "\"");
  }
  if (!j.is_object()) throw parse_error("activation json: expected a name or an object");
  if (j.contains("name")) {
    if (j["name"] != "A_scaled")
      throw parse_error("activation json: unknown name object");
    return act_bump_scaled(get_nat(j, "M", "activation json"));
  }
  PiecewisePoly a;
  a.breaks = dyvec_from_json(must_get(j, "breaks", "activation json"), "activation breaks");
  const json pieces = must_get(j, "pieces", "activation json");
  if (!pieces.is_array()) throw parse_error("activation json: \"pieces\" must be an array");
  for (const json& p : pieces) a.pieces.push_back(dyvec_from_json(p, "activation piece"));
  try {
    validate(a);
  } catch (const precondition_error& e) {
    throw parse_error(std::string("activation json: ") + e.what());
  }
  return a;
}

json spec_to_json(const GnnSpec& s) {
  validate(s);
  json j;
  j["version"] = 1;
  switch (s.input) {
    case InputKind::one_hot: j["input"] = "one_hot"; break;
    case InputKind::constant: j["input"] = "constant"; break;
    case InputKind::features: j["input"] = "features"; break;
  }
  j["input_width"] = s.input_width;
  if (s.input == InputKind::constant) j["constant_row"] = dyvec_to_json(s.constant_row);
  json layers = json::array();
  for (const GnnLayer& l : s.layers) {
    json lj;
    lj["w1"] = dymat_to_json(l.w1);
    lj["w2"] = dymat_to_json(l.w2);
    lj["b"] = dyvec_to_json(l.b);
    lj["act"] = activation_to_json(l.act);
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  j["readout"] = {{"w", dyvec_to_json(s.readout.w)},
                  {"b", dyadic_to_json(s.readout.b)},
                  {"act", activation_to_json(s.readout.act)}};
  return j;
}

GnnSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("spec json: not an object");
  check_version(j, "spec json");
  GnnSpec s;
  const std::string input = must_get(j, "input", "spec json").get<std::string>();
  if (input == "one_hot")
    s.input = InputKind::one_hot;
  else if (input == "constant")
    s.input = InputKind::constant;
  else if (input == "features")
    s.input = InputKind::features;
  else
    throw parse_error("spec json: unknown input kind \"" + input + "\"");
  s.input_width = get_nat(j, "input_width", "spec json");
  if (s.input == InputKind::constant)
    s.constant_row = dyvec_from_json(must_get(j, "constant_row", "spec json"), "constant_row");
  const json layers = must_get(j, "layers", "spec json");
  if (!layers.is_array()) throw parse_error("spec json: \"layers\" must be an array");
  for (const json& lj : layers) {
    GnnLayer l;
    l.w1 = dymat_from_json(must_get(lj, "w1", "spec layer"), "w1");
    l.w2 = dymat_from_json(must_get(lj, "w2", "spec layer"), "w2");
    l.b = dyvec_from_json(must_get(lj, "b", "spec layer"), "b");
    l.act = activation_from_json(must_get(lj, "act", "spec layer"));
    s.layers.push_back(std::move(l));
  }
  const json ro = must_get(j, "readout", "spec json");
  s.readout.w = dyvec_from_json(must_get(ro, "w", "spec readout"), "readout w");
  s.readout.b = dyadic_from_json(must_get(ro, "b", "spec readout"));
  s.readout.act = activation_from_json(must_get(ro, "act", "spec readout"));
  try {
    validate(s);
  } catch (const precondition_error& e) {
    throw parse_error(std::string("spec json: ") + e.what());
  }
  return s;
}

void write_spec_json(const GnnSpec& s, const std::string& path) {
  write_text_file(path, spec_to_json(s).dump(2) + "\n");
}

GnnSpec read_spec_json(const std::string& path) { return spec_from_json(read_json_file(path)); }

json quotient_to_json(const QuotientGraph& q) {
  json j;
  j["version"] = 1;
  j["classes"] = q.k;
  j["size"] = q.size;
  j["rep"] = q.rep;
  j["label"] = q.label;
  j["class_of"] = q.class_of;
  json w = json::array();
  for (const auto& row : q.w) {
    json r = json::array();
    for (const auto& [to, weight] : row) r.push_back({to, weight});
    w.push_back(std::move(r));
  }
  j["weights"] = std::move(w);
  return j;
}

void write_report(const json& report, const std::string& path, const std::string& format,
                  bool with_timestamp) {
  if (format == "csv") {
    write_text_file(path, render_csv(report));
    return;
  }
  if (format != "json")
    throw precondition_error("write_report: format must be \"json\" or \"csv\"");
  json j = report;
  if (with_timestamp) j["generated_at"] = iso_timestamp();
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace wlvc
