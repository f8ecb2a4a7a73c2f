#include "wlvc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wlvc/errors.hpp"

namespace wlvc {

std::size_t Graph::edge_count() const {
  std::size_t s = 0;
  for (const auto& a : adj) s += a.size();
  return directed ? s : s / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : adj[u])
      if (directed || u < v) out.emplace_back(u, v);
  return out;
}

namespace {

void check_vertex(Vertex v, Vertex n, const char* who) {
  if (v >= n)
    throw precondition_error(std::string(who) + ": vertex " + std::to_string(v) +
                             " out of range for order " + std::to_string(n));
}

void sort_dedup(Graph& g) {
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

}  // namespace

Graph new_graph(Vertex n, const std::vector<Edge>& edges, bool directed) {
  Graph g;
  g.n = n;
  g.directed = directed;
  g.adj.resize(n);
  for (const auto& [u, v] : edges) {
    check_vertex(u, n, "new_graph");
    check_vertex(v, n, "new_graph");
    if (u == v) throw precondition_error("new_graph: self-loop at vertex " + std::to_string(u));
    g.adj[u].push_back(v);
    if (!directed) g.adj[v].push_back(u);
  }
  sort_dedup(g);
  return g;
}

Graph new_graph(Vertex n, const std::vector<Edge>& edges, std::vector<std::uint32_t> labels,
                bool directed) {
  Graph g = new_graph(n, edges, directed);
  if (labels.size() != n)
    throw precondition_error("new_graph: label count " + std::to_string(labels.size()) +
                             " does not match order " + std::to_string(n));
  g.labels = std::move(labels);
  return g;
}

void validate(const Graph& g) {
  if (g.adj.size() != g.n) throw precondition_error("graph: adjacency size mismatch");
  if (g.has_labels() && g.labels.size() != g.n)
    throw precondition_error("graph: label count mismatch");
  if (g.has_features() && g.feat.size() != g.n)
    throw precondition_error("graph: feature row count mismatch");
  if (g.has_edge_labels() && g.elab.size() != g.n)
    throw precondition_error("graph: edge label list mismatch");
  for (Vertex u = 0; u < g.n; ++u) {
    const auto& a = g.adj[u];
    if (!std::is_sorted(a.begin(), a.end()))
      throw precondition_error("graph: adjacency not sorted at vertex " + std::to_string(u));
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw precondition_error("graph: duplicate edge at vertex " + std::to_string(u));
    for (Vertex v : a) {
      check_vertex(v, g.n, "graph");
      if (v == u) throw precondition_error("graph: self-loop at vertex " + std::to_string(u));
      if (!g.directed && !std::binary_search(g.adj[v].begin(), g.adj[v].end(), u))
        throw precondition_error("graph: missing back edge " + std::to_string(v) + "->" +
                                 std::to_string(u));
    }
    if (g.has_edge_labels() && g.elab[u].size() != a.size())
      throw precondition_error("graph: edge label count mismatch at vertex " + std::to_string(u));
  }
}

Graph permute(const Graph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.n) throw precondition_error("permute: permutation size mismatch");
  std::vector<bool> seen(g.n, false);
  for (Vertex p : perm) {
    check_vertex(p, g.n, "permute");
    if (seen[p]) throw precondition_error("permute: not a permutation");
    seen[p] = true;
  }
  Graph h;
  h.n = g.n;
  h.directed = g.directed;
  h.adj.resize(g.n);
  if (g.has_edge_labels()) h.elab.resize(g.n);
  for (Vertex u = 0; u < g.n; ++u) {
    const Vertex pu = perm[u];
    std::vector<std::pair<Vertex, std::uint32_t>> row;
    row.reserve(g.adj[u].size());
    for (std::size_t i = 0; i < g.adj[u].size(); ++i)
      row.emplace_back(perm[g.adj[u][i]], g.has_edge_labels() ? g.elab[u][i] : 0);
    std::sort(row.begin(), row.end());
    for (const auto& [v, el] : row) {
      h.adj[pu].push_back(v);
      if (g.has_edge_labels()) h.elab[pu].push_back(el);
    }
  }
  if (g.has_labels()) {
    h.labels.resize(g.n);
    for (Vertex u = 0; u < g.n; ++u) h.labels[perm[u]] = g.labels[u];
  }
  if (g.has_features()) {
    h.feat.resize(g.n);
    for (Vertex u = 0; u < g.n; ++u) h.feat[perm[u]] = g.feat[u];
  }
  return h;
}

Graph disjoint_union(const std::vector<Graph>& gs, std::vector<Vertex>* offsets) {
  if (gs.empty()) throw precondition_error("disjoint_union: empty graph list");
  if (offsets) offsets->clear();
  const bool directed = gs.front().directed;
  const bool labeled = gs.front().has_labels();
  const bool elabeled = gs.front().has_edge_labels();
  const bool featured = gs.front().has_features();
  for (const Graph& g : gs)
    if (g.directed != directed || g.has_labels() != labeled ||
        g.has_edge_labels() != elabeled || g.has_features() != featured)
      throw precondition_error("disjoint_union: inconsistent graph attributes");
  Graph u;
  u.directed = directed;
  Vertex off = 0;
  for (const Graph& g : gs) {
    if (offsets) offsets->push_back(off);
    for (Vertex v = 0; v < g.n; ++v) {
      u.adj.emplace_back();
      auto& row = u.adj.back();
      row.reserve(g.adj[v].size());
      for (Vertex w : g.adj[v]) row.push_back(w + off);
      if (elabeled) u.elab.push_back(g.elab[v]);
      if (featured) u.feat.push_back(g.feat[v]);
    }
    if (labeled) u.labels.insert(u.labels.end(), g.labels.begin(), g.labels.end());
    off += g.n;
  }
  u.n = off;
  return u;
}

Graph as_undirected(const Graph& g) {
  if (!g.directed) return g;
  Graph h;
  h.n = g.n;
  h.directed = false;
  h.labels = g.labels;
  h.feat = g.feat;
  h.adj.resize(g.n);
  for (Vertex u = 0; u < g.n; ++u)
    for (Vertex v : g.adj[u]) {
      h.adj[u].push_back(v);
      h.adj[v].push_back(u);
    }
  for (auto& a : h.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return h;
}

std::vector<Graph> gen_tree_family(Vertex k, bool directed) {
  if (k < 4) throw precondition_error("gen_tree_family: need k >= 4, got " + std::to_string(k));
  std::vector<Graph> out;
  for (Vertex m = 0; m <= (k - 3) / 2; ++m) {
    const Vertex nn = k - 3 - m;
    std::vector<Edge> edges;
    // child -> parent orientation; vertices: 0 root, 1 and 2 its children,
    // then the m leaves under 1 and the nn leaves under 2
    edges.emplace_back(1, 0);
    edges.emplace_back(2, 0);
    Vertex next = 3;
    for (Vertex i = 0; i < m; ++i) edges.emplace_back(next++, 1);
    for (Vertex i = 0; i < nn; ++i) edges.emplace_back(next++, 2);
    out.push_back(new_graph(k, edges, directed));
  }
  return out;
}

}  // namespace wlvc
