#pragma once

#include <cstdint>
#include <vector>

#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/wl.hpp"

namespace wlvc {

// Weighted quotient of a graph by an equitable (stable) coloring. Classes are
// ordered by color id; w[X] holds (Y, weight) pairs where weight is the number
// of Y-neighbors every X-vertex has.
struct QuotientGraph {
  std::uint32_t k = 0;
  std::vector<std::uint32_t> class_of;  // per vertex
  std::vector<std::uint64_t> size;      // per class
  std::vector<Vertex> rep;              // least vertex per class
  std::vector<std::uint32_t> label;     // representative's label (0 if unlabeled)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> w;
};

// Verifies the coloring is equitable and label-consistent before reducing;
// throws precondition_error otherwise.
QuotientGraph reduce(const Graph& g, const Coloring& stable);
QuotientGraph reduce(const Graph& g);  // uses the graph's own stable coloring

// Evaluates the spec on the quotient: per-class features with weighted
// aggregation, readout scaled by class sizes. Agrees bit-exactly with
// gnn_eval on the original graph. The graph is needed only for input rows.
Dyadic eval_on_quotient(const GnnSpec& s, const QuotientGraph& q, const Graph& g);
// Graph-free form: one-hot/constant inputs are rebuilt from class labels.
Dyadic eval_on_quotient(const GnnSpec& s, const QuotientGraph& q);

struct QuotientTrace {
  std::vector<DyMat> h;  // h[t][class]
  Dyadic out;
};
QuotientTrace eval_on_quotient_trace(const GnnSpec& s, const QuotientGraph& q, const Graph& g);
QuotientTrace eval_on_quotient_trace(const GnnSpec& s, const QuotientGraph& q);

}  // namespace wlvc
