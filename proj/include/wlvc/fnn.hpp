#pragma once

#include <cstdint>
#include <vector>

#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/wl.hpp"

namespace wlvc {

// Feedforward DAG with dyadic edge weights and per-node bias/activation.
// Node value: act(sum of weight * source value + bias); input nodes take the
// supplied values instead. Activations live in a shared table; act < 0 marks
// an input node.
struct FnnDag {
  struct Node {
    Dyadic bias;
    std::int32_t act = -1;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::pair<std::uint32_t, Dyadic>>> in_edges;
  std::vector<std::uint32_t> inputs, outputs;
  std::vector<PiecewisePoly> acts;
  std::vector<std::uint32_t> topo;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const;
  // computation nodes plus edges
  std::size_t size() const { return node_count() - inputs.size() + edge_count(); }
};

// Structural checks: topo covers every node exactly once and respects edges,
// inputs have in-degree 0, outputs out-degree 0, no stray sources or sinks.
void validate(const FnnDag& d);

std::vector<Dyadic> fnn_eval(const FnnDag& d, const DyVec& in, std::size_t threads = 1);

// Provenance of an unrolled node: layer 0 = input copies, 1..L = layer
// nodes, L+1 = the per-graph readout node.
struct UnrollMeta {
  std::uint32_t graph, layer, vertex, channel;
};

struct UnrolledFnn {
  FnnDag dag;
  std::vector<UnrollMeta> meta;  // parallel to dag.nodes
};

// Unrolls the message-passing computation of the spec over a concrete graph
// into a DAG: one node per (vertex, channel, layer) plus one readout node.
UnrolledFnn unroll(const GnnSpec& s, const Graph& g);
// Disjoint union of per-graph unrollings with one readout node per graph.
UnrolledFnn unroll_multi(const GnnSpec& s, const std::vector<Graph>& gs);

// Input values matching dag.inputs order.
DyVec unroll_inputs(const UnrolledFnn& u, const GnnSpec& s, const std::vector<Graph>& gs);

// Merges nodes of vertices sharing a stable color, layer by layer; incoming
// weights accumulate over merged sources, so aggregation picks up the
// neighbor-class multiplicities and the readout the class sizes. Outputs are
// unchanged bit-exactly.
UnrolledFnn collapse_fnn(const UnrolledFnn& u, const std::vector<Graph>& gs,
                         const std::vector<Coloring>& stable);

// Nodes with meta.layer == t.
std::size_t nodes_at_layer(const UnrolledFnn& u, std::uint32_t t);

}  // namespace wlvc
