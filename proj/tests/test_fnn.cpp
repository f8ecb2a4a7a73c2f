#include <doctest.h>

#include "testutil.hpp"
#include "wlvc/errors.hpp"
#include "wlvc/fnn.hpp"
#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/quotient.hpp"
#include "wlvc/wl.hpp"

using namespace wlvc;

namespace {

FnnDag two_node_dag() {
  FnnDag d;
  d.nodes.resize(2);
  d.nodes[0].act = -1;
  d.nodes[1].act = 0;
  d.nodes[1].bias = Dyadic(1);
  d.in_edges.resize(2);
  d.in_edges[1] = {{0, Dyadic(2)}};
  d.inputs = {0};
  d.outputs = {1};
  d.acts = {act_identity()};
  d.topo = {0, 1};
  return d;
}

}  // namespace

TEST_SUITE("fnn") {

TEST_CASE("hand-built dag evaluates and counts size") {
  const FnnDag d = two_node_dag();
  validate(d);
  CHECK(d.edge_count() == 1);
  CHECK(d.size() == 2);  // 1 computation node + 1 edge
  CHECK(fnn_eval(d, {Dyadic(3)}) == std::vector<Dyadic>{Dyadic(7)});
  CHECK_THROWS_AS(fnn_eval(d, {Dyadic(1), Dyadic(1)}), precondition_error);
}

TEST_CASE("validate rejects malformed dags") {
  FnnDag d = two_node_dag();
  d.in_edges[0] = {{1, Dyadic(1)}};
  CHECK_THROWS_AS(validate(d), precondition_error);  // input with in-edges

  d = two_node_dag();
  d.topo = {1, 0};
  CHECK_THROWS_AS(validate(d), precondition_error);  // topo violates the edge

  d = two_node_dag();
  d.topo = {1, 1};
  CHECK_THROWS_AS(validate(d), precondition_error);  // not a permutation

  d = two_node_dag();
  d.nodes.resize(3);
  d.nodes[2].act = 0;
  d.in_edges.push_back({{0, Dyadic(1)}});
  d.topo = {0, 1, 2};
  CHECK_THROWS_AS(validate(d), precondition_error);  // sink that is not an output

  d = two_node_dag();
  d.nodes[1].act = 4;
  CHECK_THROWS_AS(validate(d), precondition_error);  // activation index out of range
}

TEST_CASE("unrolling a triangle has the predicted size") {
  auto g = tt::rng(5);
  const GnnSpec s = tt::random_spec(g, 2, 2);
  const UnrolledFnn u = unroll(s, tt::complete(3));
  // d(L+1)|V| + 1 nodes and d|V| + d^2 L (2E + V) edges
  CHECK(u.dag.node_count() == 19);
  CHECK(u.dag.edge_count() == 78);
  CHECK(u.dag.inputs.size() == 6);
  CHECK(u.dag.outputs.size() == 1);
  CHECK(u.dag.size() == 19 - 6 + 78);
  CHECK(nodes_at_layer(u, 0) == 6);
  CHECK(nodes_at_layer(u, 1) == 6);
  CHECK(nodes_at_layer(u, 2) == 6);
  CHECK(nodes_at_layer(u, 3) == 1);
}

TEST_CASE("unrolled dag computes exactly the message-passing value") {
  auto g = tt::rng(42);
  for (int i = 0; i < 30; ++i) {
    const Graph gr = tt::random_graph(g, 8);
    const GnnSpec s = tt::random_spec(g, 1 + i % 3, 1 + i % 3);
    const UnrolledFnn u = unroll(s, gr);
    validate(u.dag);
    const DyVec in = unroll_inputs(u, s, {gr});
    CHECK(fnn_eval(u.dag, in) == std::vector<Dyadic>{gnn_eval(s, gr)});
  }
}

TEST_CASE("unroll_multi keeps one output per graph in order") {
  auto g = tt::rng(8);
  const GnnSpec s = tt::random_spec(g, 2, 2);
  const std::vector<Graph> gs{tt::complete(3), tt::path(4), tt::cycle(5)};
  const UnrolledFnn u = unroll_multi(s, gs);
  validate(u.dag);
  CHECK(u.dag.outputs.size() == 3);
  const auto out = fnn_eval(u.dag, unroll_inputs(u, s, gs));
  for (std::size_t i = 0; i < gs.size(); ++i) CHECK(out[i] == gnn_eval(s, gs[i]));
  CHECK_THROWS_AS(unroll_inputs(u, s, {tt::complete(3)}), precondition_error);
}

TEST_CASE("collapse merges color classes and preserves outputs") {
  auto g = tt::rng(21);
  const GnnSpec s = tt::random_spec(g, 2, 3);
  const std::vector<Graph> gs{tt::cycle(6), tt::star(3), tt::path(4)};
  const UnrolledFnn u = unroll_multi(s, gs);
  std::vector<Coloring> stable;
  std::size_t classes = 0;
  for (const Graph& gr : gs) {
    stable.push_back(stable_coloring(gr).first);
    classes += color_complexity(gr);
  }
  const UnrolledFnn c = collapse_fnn(u, gs, stable);
  validate(c.dag);
  // (L+1) d nodes per class plus one readout per graph
  CHECK(c.dag.node_count() == (3 + 1) * 2 * classes + 3);
  CHECK(c.dag.node_count() < u.dag.node_count());
  const auto direct = fnn_eval(u.dag, unroll_inputs(u, s, gs));
  const auto merged = fnn_eval(c.dag, unroll_inputs(c, s, gs));
  CHECK(direct == merged);
}

TEST_CASE("collapse on random inputs") {
  auto g = tt::rng(77);
  for (int i = 0; i < 20; ++i) {
    std::vector<Graph> gs{tt::random_graph(g, 7), tt::random_graph(g, 7)};
    const GnnSpec s = tt::random_spec(g, 1 + i % 2, 1 + i % 3);
    const UnrolledFnn u = unroll_multi(s, gs);
    std::vector<Coloring> stable;
    for (const Graph& gr : gs) stable.push_back(stable_coloring(gr).first);
    const UnrolledFnn c = collapse_fnn(u, gs, stable);
    CHECK(fnn_eval(c.dag, unroll_inputs(c, s, gs)) == fnn_eval(u.dag, unroll_inputs(u, s, gs)));
  }
}

TEST_CASE("collapse checks its inputs") {
  auto g = tt::rng(3);
  const GnnSpec s = tt::random_spec(g, 1, 1);
  const std::vector<Graph> gs{tt::path(3)};
  const UnrolledFnn u = unroll_multi(s, gs);
  CHECK_THROWS_AS(collapse_fnn(u, gs, {}), precondition_error);
}

}  // TEST_SUITE
