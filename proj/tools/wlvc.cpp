#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

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

namespace {

using wlvc::json;

constexpr const char* kVersion = "wlvc 1.0.0";

struct Common {
  std::size_t threads = 0;  // 0 = available parallelism
  bool no_timestamp = false;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "worker threads (0 = all available)")
      ->capture_default_str();
  cmd->add_flag("--no-timestamp", c.no_timestamp, "omit generated_at from the report");
  cmd->add_option("-o,--out", c.out, "report path (a .csv suffix switches the format)");
}

bool csv_out(const Common& c) {
  return c.out.size() >= 4 && c.out.compare(c.out.size() - 4, 4, ".csv") == 0;
}

// Reports go to --out (json or csv by extension) or stdout as json.
void emit(json rep, const Common& c) {
  if (!c.out.empty()) {
    wlvc::write_report(rep, c.out, csv_out(c) ? "csv" : "json", !c.no_timestamp);
    return;
  }
  if (!c.no_timestamp) rep["generated_at"] = wlvc::timestamp_utc();
  std::cout << rep.dump(2) << "\n";
}

std::vector<wlvc::Graph> load_graphs(const std::string& input, const std::string& format) {
  if (format == "tud") return wlvc::parse_tud(input).graphs;
  if (format == "json") return wlvc::read_graph_set_json(input);
  throw wlvc::precondition_error("wlvc: unknown input format " + format);
}

std::uint64_t parse_scale(const std::string& s, std::size_t n) {
  if (s == "auto") {
    if (n > 31) throw wlvc::precondition_error("wlvc: n too large for the default scale");
    return std::uint64_t{1} << (2 * n);
  }
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || v == 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw wlvc::parse_error("wlvc: --scale expects auto or a positive integer");
  }
}

// Subset masks are written as a bit string over members, leftmost = member 0.
std::uint64_t parse_subset(const std::string& s, std::size_t members) {
  std::string bits = s;
  if (bits.rfind("0b", 0) == 0) bits = bits.substr(2);
  if (bits.empty() || bits.size() > members || bits.size() > 64)
    throw wlvc::parse_error("wlvc: --subset wants one bit per member, leftmost first");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      mask |= std::uint64_t{1} << i;
    else if (bits[i] != '0')
      throw wlvc::parse_error("wlvc: --subset wants one bit per member, leftmost first");
  }
  return mask;
}

int run_wl(const Common& c, const std::string& input, const std::string& format,
           std::size_t iters, bool edge_labels, bool ignore_labels) {
  const auto gs = load_graphs(input, format);
  wlvc::WlOptions o;
  o.max_iters = iters;
  o.use_labels = !ignore_labels;
  o.use_edge_labels = edge_labels;
  o.threads = c.threads;
  const wlvc::WlRun run = wlvc::wl1_refine(gs, o);

  std::vector<std::size_t> counts(iters + 1);
  for (std::size_t t = 0; t <= iters; ++t) {
    const std::size_t at = run.effective_iter(t);
    std::set<wlvc::Histogram> h;
    for (const auto& col : run.iters[at]) h.insert(wlvc::histogram(col));
    counts[t] = h.size();
  }

  const std::size_t last = run.effective_iter(iters);
  std::map<wlvc::Histogram, std::size_t> ids;
  for (const auto& col : run.iters[last]) ids.try_emplace(wlvc::histogram(col), 0);
  std::size_t next = 0;
  for (auto& [h, id] : ids) id = next++;

  json rep;
  rep["version"] = 1;
  rep["graphs"] = gs.size();
  rep["iters"] = iters;
  rep["counts"] = counts;
  json gid = json::array();
  for (const auto& col : run.iters[last]) gid.push_back(ids.at(wlvc::histogram(col)));
  rep["histogram_ids"] = gid;
  rep["distinct_colors"] = run.distinct;
  rep["colors_used"] = run.colors_used;
  if (run.stable_iter)
    rep["stable_iter"] = *run.stable_iter;
  else
    rep["stable_iter"] = nullptr;
  if (csv_out(c)) {
    json t = {{"columns", json::array({"iter", "distinct_histograms"})}, {"rows", json::array()}};
    for (std::size_t i = 0; i <= iters; ++i) t["rows"].push_back(json::array({i, counts[i]}));
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_gen(const Common& c, const std::string& family, std::size_t k, std::size_t n,
            const std::string& scale, bool directed) {
  std::vector<wlvc::Graph> gs;
  if (family == "tree") {
    gs = wlvc::gen_tree_family(k, directed);
  } else if (family == "forest") {
    gs.push_back(wlvc::gen_extraction_forest(k, n, parse_scale(scale, n)).graph);
  } else {
    throw wlvc::precondition_error("wlvc: unknown family " + family);
  }
  if (!c.out.empty())
    wlvc::write_graph_set_json(gs, c.out);
  else
    std::cout << wlvc::graph_set_to_json(gs).dump(2) << "\n";
  return 0;
}

int run_fetch(const Common& c, const std::string& name, const wlvc::CacheConfig& cfg) {
  const std::string dir = wlvc::fetch_dataset(name, cfg);
  const wlvc::TuDataset ds = wlvc::parse_tud(dir, name);
  const wlvc::DatasetStats st = wlvc::dataset_stats(ds);
  json rep;
  rep["version"] = 1;
  rep["name"] = name;
  rep["path"] = dir;
  rep["graphs"] = st.graphs;
  rep["vertices"] = st.vertices;
  rep["edges"] = st.edges;
  rep["node_label_values"] = st.node_label_count;
  rep["edge_label_values"] = st.edge_label_count;
  rep["classes"] = st.class_count;
  if (csv_out(c)) {
    json t = {{"columns", json::array({"name", "graphs", "vertices", "edges", "classes"})},
              {"rows", json::array({json::array(
                           {name, st.graphs, st.vertices, st.edges, st.class_count})})}};
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_reduce(const Common& c, const std::string& input, const std::string& format) {
  const auto gs = load_graphs(input, format);
  json rep;
  rep["version"] = 1;
  rep["quotients"] = json::array();
  for (const auto& g : gs) rep["quotients"].push_back(wlvc::quotient_to_json(wlvc::reduce(g)));
  if (csv_out(c)) {
    json t = {{"columns", json::array({"graph", "classes"})}, {"rows", json::array()}};
    for (std::size_t i = 0; i < gs.size(); ++i)
      t["rows"].push_back(json::array({i, rep["quotients"][i]["classes"].get<std::size_t>()}));
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_unroll(const Common& c, const std::string& input, const std::string& format,
               const std::string& spec_path, bool check, bool collapse) {
  const auto gs = load_graphs(input, format);
  const wlvc::GnnSpec s = wlvc::read_spec_json(spec_path);
  const wlvc::UnrolledFnn u = wlvc::unroll_multi(s, gs);

  json rep;
  rep["version"] = 1;
  rep["graphs"] = gs.size();
  rep["nodes"] = u.dag.node_count();
  rep["edges"] = u.dag.edge_count();
  rep["size"] = u.dag.size();
  json layers = json::array();
  for (std::uint32_t t = 0; t <= s.layers.size() + 1; ++t)
    layers.push_back(wlvc::nodes_at_layer(u, t));
  rep["nodes_per_layer"] = layers;

  bool all_equal = true;
  if (check || collapse) {
    const wlvc::DyVec in = wlvc::unroll_inputs(u, s, gs);
    const std::vector<wlvc::Dyadic> outs = wlvc::fnn_eval(u.dag, in, c.threads);
    if (check) {
      for (std::size_t i = 0; i < gs.size(); ++i)
        if (outs[i] != wlvc::gnn_eval(s, gs[i], c.threads)) all_equal = false;
      rep["check"] = {{"cases", gs.size()}, {"equal", all_equal}};
    }
    if (collapse) {
      std::vector<wlvc::Coloring> stables;
      stables.reserve(gs.size());
      for (const auto& g : gs) stables.push_back(wlvc::stable_coloring(g, c.threads).first);
      const wlvc::UnrolledFnn f = wlvc::collapse_fnn(u, gs, stables);
      const std::vector<wlvc::Dyadic> couts =
          wlvc::fnn_eval(f.dag, wlvc::unroll_inputs(f, s, gs), c.threads);
      rep["collapse"] = {{"nodes", f.dag.node_count()},
                         {"edges", f.dag.edge_count()},
                         {"size", f.dag.size()},
                         {"outputs_equal", couts == outs}};
      if (couts != outs) all_equal = false;
    }
  }
  emit(rep, c);
  if ((check || collapse) && !all_equal)
    throw wlvc::internal_error("unroll: evaluations disagree");
  return 0;
}

int run_eval(const Common& c, const std::string& input, const std::string& format,
             const std::string& spec_path, bool use_quotient) {
  const auto gs = load_graphs(input, format);
  const wlvc::GnnSpec s = wlvc::read_spec_json(spec_path);
  json rep;
  rep["version"] = 1;
  rep["quotient"] = use_quotient;
  rep["outputs"] = json::array();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const wlvc::Dyadic v = use_quotient
                               ? wlvc::eval_on_quotient(s, wlvc::reduce(gs[i]), gs[i])
                               : wlvc::gnn_eval(s, gs[i], c.threads);
    rep["outputs"].push_back({{"graph", i},
                              {"value", wlvc::dyadic_to_json(v)},
                              {"approx", v.to_double()}});
  }
  if (csv_out(c)) {
    json t = {{"columns", json::array({"graph", "mantissa", "exponent", "approx"})},
              {"rows", json::array()}};
    for (const auto& o : rep["outputs"])
      t["rows"].push_back(json::array(
          {o["graph"], o["value"]["m"], o["value"]["e"], o["approx"]}));
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_shatter_bits(const Common& c, std::size_t n, const std::string& scale_arg, bool verify,
                     std::size_t budget) {
  const std::uint64_t scale = parse_scale(scale_arg, n);
  json rep;
  rep["version"] = 1;
  rep["n"] = n;
  rep["scale"] = scale;

  json ledgers = json::array();
  json readouts = json::array();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    wlvc::BitVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    const wlvc::ExtractionLedger led = wlvc::ledger(x);
    json l;
    l["x"] = x;
    l["rho"] = wlvc::dyadic_to_json(led.rho_x);
    json per_k = json::array();
    for (std::size_t k = 1; k <= n; ++k) {
      per_k.push_back({{"k", k},
                       {"rho_k", wlvc::dyadic_to_json(led.rho_k[k - 1])},
                       {"a", wlvc::dyadic_to_json(led.a[k - 1])},
                       {"b", wlvc::dyadic_to_json(led.b[k - 1])},
                       {"c", wlvc::dyadic_to_json(led.c[k - 1])}});
    }
    l["per_k"] = per_k;
    ledgers.push_back(l);
    readouts.push_back(
        {{"x", x}, {"spec", wlvc::spec_to_json(wlvc::build_extraction_gnn(x, scale))}});
  }
  rep["ledgers"] = ledgers;
  rep["readouts"] = readouts;

  json forests = json::array();
  for (std::size_t k = 1; k <= n; ++k) {
    const wlvc::ExtractionForest f = wlvc::gen_extraction_forest(k, n, scale);
    forests.push_back({{"k", k},
                       {"components", f.comp_code.size()},
                       {"vertices", f.graph.n},
                       {"edges", f.graph.edge_count()}});
  }
  rep["forests"] = forests;

  bool ok = true;
  if (verify) {
    const wlvc::ExtractionReport r = wlvc::verify_bit_extraction(n, scale, c.threads, budget);
    ok = r.ok;
    rep["checks"] = r.checks;
    rep["ok"] = r.ok;
    rep["failures"] = r.failures;
    json matrix = json::array();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      json row = json::array();
      for (std::size_t k = 1; k <= n; ++k) {
        const std::string tag = "x=" + std::to_string(mask) + ",k=" + std::to_string(k);
        bool pass = true;
        for (const auto& f : r.failures)
          if (f.rfind(tag, 0) == 0) pass = false;
        row.push_back(pass);
      }
      matrix.push_back(row);
    }
    rep["pass_matrix"] = matrix;
    std::size_t passes = 0;
    for (const auto& row : matrix)
      for (const auto& cell : row) passes += cell.get<bool>() ? 1 : 0;
    rep["matrix_passes"] = passes;
    rep["matrix_total"] = n << n;
  }
  if (csv_out(c) && verify) {
    json t = {{"columns", json::array({"x", "k", "pass"})}, {"rows", json::array()}};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
      for (std::size_t k = 1; k <= n; ++k)
        t["rows"].push_back(json::array(
            {mask, k, rep["pass_matrix"][mask][k - 1].get<bool>() ? 1 : 0}));
    rep = t;
  }
  emit(rep, c);
  if (!ok) throw wlvc::internal_error("shatter-bits: verification failed");
  return 0;
}

int run_shatter_hist(const Common& c, const std::string& input, const std::string& format,
                     std::size_t iters, const std::string& subset, bool verify_all) {
  const auto gs = load_graphs(input, format);
  const wlvc::ShatterReadout r = wlvc::build_histogram_shatter(gs, iters, c.threads);
  json rep;
  rep["version"] = 1;
  rep["members"] = gs.size();
  rep["iters_requested"] = r.requested_iters;
  rep["iters_used"] = r.iters;
  rep["base"] = r.base;
  json codes = json::array();
  for (const auto& code : r.codes) codes.push_back(code.str());
  rep["codes"] = codes;

  if (!subset.empty()) {
    const std::uint64_t mask = parse_subset(subset, gs.size());
    json outs = json::array();
    for (const auto& g : gs) outs.push_back(wlvc::shatter_eval(r, mask, g, c.threads));
    rep["subset"] = {{"given", subset}, {"mask", mask}, {"outputs", outs}};
  }
  if (verify_all) {
    std::uint64_t bad = 0;
    const bool shattered = wlvc::verify_shatter(gs, iters, c.threads, &bad);
    rep["shattered"] = shattered;
    if (!shattered) rep["counterexample_subset"] = bad;
  }
  if (csv_out(c) && !subset.empty()) {
    json t = {{"columns", json::array({"graph", "selected", "output"})}, {"rows", json::array()}};
    const std::uint64_t mask = rep["subset"]["mask"].get<std::uint64_t>();
    for (std::size_t i = 0; i < gs.size(); ++i)
      t["rows"].push_back(json::array({i, (mask >> i) & 1,
                                       rep["subset"]["outputs"][i].get<int>()}));
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_bounds(const Common& c, std::uint64_t d, const std::vector<std::uint64_t>& Ls,
               std::uint64_t p, std::uint64_t u, std::uint64_t delta,
               const std::vector<double>& eps, const std::vector<double>& conf) {
  json rep;
  rep["version"] = 1;
  rep["case"] = wlvc::asymptotic_class(delta);
  json rows = json::array();
  json samples = json::array();
  for (std::uint64_t L : Ls) {
    wlvc::BoundParams b{d, L, p, delta, u};
    const std::uint64_t P = wlvc::param_count_uniform(d, L);
    const wlvc::VcUpper r = wlvc::vc_upper(b);
    rows.push_back({{"d", d},       {"L", L},
                    {"p", p},       {"u", u},
                    {"delta", delta}, {"P", P},
                    {"m_star", r.m_star}, {"satisfied", r.satisfied},
                    {"floor", r.floor_m}});
    for (double e : eps)
      for (double cf : conf)
        samples.push_back({{"L", L},
                           {"epsilon", e},
                           {"delta_conf", cf},
                           {"size", wlvc::sample_complexity(e, cf, r.m_star)}});
  }
  rep["rows"] = rows;
  rep["samples"] = samples;
  if (csv_out(c)) {
    json t = {{"columns",
               json::array({"d", "L", "p", "u", "delta", "P", "m_star", "satisfied"})},
              {"rows", json::array()}};
    for (const auto& row : rows)
      t["rows"].push_back(json::array({row["d"], row["L"], row["p"], row["u"], row["delta"],
                                       row["P"], row["m_star"],
                                       row["satisfied"].get<bool>() ? 1 : 0}));
    rep = t;
  }
  emit(rep, c);
  return 0;
}

int run_regime(const Common& c, bool non_uniform, std::optional<std::uint64_t> bitlength,
               std::optional<std::uint64_t> color_bound) {
  wlvc::RegimeQuery q;
  q.uniform = !non_uniform;
  q.bitlength = bitlength;
  q.color_bound = color_bound;
  const wlvc::RegimeAnswer a = wlvc::regime(q);
  json rep;
  rep["version"] = 1;
  rep["regime"] = a.name;
  rep["bound"] = a.bound;
  emit(rep, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Weisfeiler-Leman / GNN / VC-bound toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // wl
  Common wl_c;
  std::string wl_input, wl_format = "json";
  std::size_t wl_iters = 6;
  bool wl_edge_labels = false, wl_ignore_labels = false;
  auto* wl = app.add_subcommand("wl", "refine a graph set and count distinct histograms");
  wl->add_option("--input", wl_input, "graph set (json) or dataset directory (tud)")->required();
  wl->add_option("--format", wl_format, "input format: json or tud")->capture_default_str();
  wl->add_option("--iters", wl_iters, "refinement depth L")->capture_default_str();
  wl->add_flag("--edge-labels", wl_edge_labels, "fold edge labels into the refinement");
  wl->add_flag("--ignore-labels", wl_ignore_labels, "seed from a uniform color");
  add_common(wl, wl_c);

  // gen
  Common gen_c;
  std::string gen_family, gen_scale = "auto";
  std::size_t gen_k = 0, gen_n = 0;
  bool gen_directed = false;
  auto* gen = app.add_subcommand("gen", "generate synthetic graph families");
  gen->add_option("--family", gen_family, "tree or forest")->required();
  gen->add_option("--k", gen_k, "order (tree) or bit position (forest)")->required();
  gen->add_option("--n", gen_n, "bitlength (forest)");
  gen->add_option("--scale", gen_scale, "forest scale M, or auto = 4^n")->capture_default_str();
  gen->add_flag("--directed", gen_directed, "keep the child-to-parent orientation (tree)");
  add_common(gen, gen_c);

  // fetch
  Common fetch_c;
  std::string fetch_name;
  wlvc::CacheConfig fetch_cfg;
  auto* fetch = app.add_subcommand("fetch", "download and cache a benchmark dataset");
  fetch->add_option("--name", fetch_name, "dataset name, e.g. ENZYMES")->required();
  fetch->add_option("--cache-root", fetch_cfg.root, "cache directory (default WLVC_CACHE_DIR)");
  fetch->add_option("--base-url", fetch_cfg.base_url, "archive base url")->capture_default_str();
  fetch->add_option("--timeout", fetch_cfg.timeout_seconds, "seconds")->capture_default_str();
  fetch->add_flag("--offline", fetch_cfg.offline, "fail instead of touching the network");
  add_common(fetch, fetch_c);

  // reduce
  Common red_c;
  std::string red_input, red_format = "json";
  auto* red = app.add_subcommand("reduce", "stable quotient of each input graph");
  red->add_option("--input", red_input, "graph set")->required();
  red->add_option("--format", red_format, "json or tud")->capture_default_str();
  add_common(red, red_c);

  // unroll
  Common un_c;
  std::string un_input, un_format = "json", un_spec;
  bool un_check = false, un_collapse = false;
  auto* un = app.add_subcommand("unroll", "unroll a spec over a graph set into a weighted dag");
  un->add_option("--input", un_input, "graph set")->required();
  un->add_option("--format", un_format, "json or tud")->capture_default_str();
  un->add_option("--spec", un_spec, "network spec (json)")->required();
  un->add_flag("--check", un_check, "assert dag and direct evaluation agree");
  un->add_flag("--collapse", un_collapse, "also collapse by stable colorings");
  add_common(un, un_c);

  // eval
  Common ev_c;
  std::string ev_input, ev_format = "json", ev_spec;
  bool ev_quotient = false;
  auto* ev = app.add_subcommand("eval", "evaluate a spec on each input graph, bit-exactly");
  ev->add_option("--input", ev_input, "graph set")->required();
  ev->add_option("--format", ev_format, "json or tud")->capture_default_str();
  ev->add_option("--spec", ev_spec, "network spec (json)")->required();
  ev->add_flag("--quotient", ev_quotient, "evaluate on the stable quotient");
  add_common(ev, ev_c);

  // shatter-bits
  Common sb_c;
  std::size_t sb_n = 0, sb_budget = 4;
  std::string sb_scale = "auto";
  bool sb_verify = true;
  auto* sb = app.add_subcommand("shatter-bits", "bit-extraction forests, ledgers and checks");
  sb->add_option("--n", sb_n, "bitlength")->required();
  sb->add_option("--scale", sb_scale, "forest scale M, or auto = 4^n")->capture_default_str();
  sb->add_flag("--verify,!--no-verify", sb_verify, "run the exhaustive checks")
      ->capture_default_str();
  sb->add_option("--budget", sb_budget, "largest n the verifier accepts")->capture_default_str();
  add_common(sb, sb_c);

  // shatter-hist
  Common sh_c;
  std::string sh_input, sh_format = "json", sh_subset;
  std::size_t sh_iters = 3;
  bool sh_verify_all = false;
  auto* sh = app.add_subcommand("shatter-hist", "histogram-shattering readout over a graph set");
  sh->add_option("--input", sh_input, "member graph set")->required();
  sh->add_option("--format", sh_format, "json or tud")->capture_default_str();
  sh->add_option("--iters", sh_iters, "refinement depth")->capture_default_str();
  sh->add_option("--subset", sh_subset, "bit string, leftmost = member 0");
  sh->add_flag("--verify-all", sh_verify_all, "check every subset against every member");
  add_common(sh, sh_c);

  // bounds
  Common bd_c;
  std::uint64_t bd_d = 1, bd_p = 1, bd_u = 1, bd_delta = 0;
  std::vector<std::uint64_t> bd_L{1};
  std::vector<double> bd_eps{0.1, 0.05, 0.01}, bd_conf{0.1, 0.05, 0.01};
  auto* bd = app.add_subcommand("bounds", "VC upper bounds and heuristic sample sizes");
  bd->add_option("--d", bd_d, "width")->capture_default_str();
  bd->add_option("--L", bd_L, "layer counts (repeatable)")->capture_default_str();
  bd->add_option("--p", bd_p, "activation pieces")->capture_default_str();
  bd->add_option("--u", bd_u, "color-complexity bound")->capture_default_str();
  bd->add_option("--delta", bd_delta, "activation degree")->capture_default_str();
  bd->add_option("--epsilon", bd_eps, "accuracy grid")->capture_default_str();
  bd->add_option("--confidence", bd_conf, "failure-probability grid")->capture_default_str();
  add_common(bd, bd_c);

  // regime
  Common rg_c;
  bool rg_non_uniform = false, rg_no_bitlength = false, rg_no_color = false;
  std::optional<std::uint64_t> rg_bitlength, rg_color;
  auto* rg = app.add_subcommand("regime", "which finiteness regime a setting falls into");
  bool rg_uniform = false;
  rg->add_flag("--uniform", rg_uniform, "uniform setting, the default");
  rg->add_flag("--non-uniform", rg_non_uniform, "order-bounded setting");
  rg->add_option("--bitlength", rg_bitlength, "weight bitlength bound, if any");
  rg->add_option("--color-bound", rg_color, "color-complexity bound, if any");
  rg->add_flag("--no-bitlength", rg_no_bitlength, "drop any bitlength bound");
  rg->add_flag("--no-color-bound", rg_no_color, "drop any color-complexity bound");
  add_common(rg, rg_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*wl) return run_wl(wl_c, wl_input, wl_format, wl_iters, wl_edge_labels, wl_ignore_labels);
    if (*gen) return run_gen(gen_c, gen_family, gen_k, gen_n, gen_scale, gen_directed);
    if (*fetch) return run_fetch(fetch_c, fetch_name, fetch_cfg);
    if (*red) return run_reduce(red_c, red_input, red_format);
    if (*un) return run_unroll(un_c, un_input, un_format, un_spec, un_check, un_collapse);
    if (*ev) return run_eval(ev_c, ev_input, ev_format, ev_spec, ev_quotient);
    if (*sb) return run_shatter_bits(sb_c, sb_n, sb_scale, sb_verify, sb_budget);
    if (*sh) return run_shatter_hist(sh_c, sh_input, sh_format, sh_iters, sh_subset,
                                     sh_verify_all);
    if (*bd) return run_bounds(bd_c, bd_d, bd_L, bd_p, bd_u, bd_delta, bd_eps, bd_conf);
    if (*rg) {
      if (rg_no_bitlength) rg_bitlength.reset();
      if (rg_no_color) rg_color.reset();
      return run_regime(rg_c, rg_non_uniform, rg_bitlength, rg_color);
    }
  } catch (const wlvc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wlvc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const wlvc::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const wlvc::internal_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
