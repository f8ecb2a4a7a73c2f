#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace wlvc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple graph with sorted adjacency lists. For directed graphs adj[u] holds
// the out-neighbors. Vertex labels, 0/1 feature rows and edge labels are all
// optional; edge labels sit in elab parallel to adj.
struct Graph {
  Vertex n = 0;
  bool directed = false;
  std::vector<std::vector<Vertex>> adj;
  std::vector<std::vector<std::uint32_t>> elab;
  std::vector<std::uint32_t> labels;
  std::vector<std::vector<std::uint8_t>> feat;

  bool has_labels() const { return !labels.empty(); }
  bool has_edge_labels() const { return !elab.empty(); }
  bool has_features() const { return !feat.empty(); }
  std::size_t degree(Vertex v) const { return adj[v].size(); }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;  // directed: arcs; undirected: u < v once
};

Graph new_graph(Vertex n, const std::vector<Edge>& edges, bool directed = false);
Graph new_graph(Vertex n, const std::vector<Edge>& edges, std::vector<std::uint32_t> labels,
                bool directed = false);

// Internal consistency check; throws precondition_error.
void validate(const Graph& g);

// Relabels vertices: vertex v becomes perm[v].
Graph permute(const Graph& g, const std::vector<Vertex>& perm);

// offsets, when given, receives each component's first vertex id in the union.
Graph disjoint_union(const std::vector<Graph>& gs, std::vector<Vertex>* offsets = nullptr);

// A graph with every arc made symmetric (no-op on undirected input).
Graph as_undirected(const Graph& g);

// The two-branch trees on k vertices: a root whose two children carry m and
// k-3-m leaves, for m = 0 .. floor((k-3)/2). Undirected by default; the
// directed variant orients every edge child -> parent.
std::vector<Graph> gen_tree_family(Vertex k, bool directed = false);

}  // namespace wlvc
