#include <doctest.h>

#include "testutil.hpp"
#include "wlvc/errors.hpp"
#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/quotient.hpp"
#include "wlvc/wl.hpp"

using namespace wlvc;

TEST_SUITE("quotient") {

TEST_CASE("C6 collapses to one class with self-weight 2") {
  const QuotientGraph q = reduce(tt::cycle(6));
  CHECK(q.k == 1);
  CHECK(q.size == std::vector<std::uint64_t>{6});
  CHECK(q.w[0] == std::vector<std::pair<std::uint32_t, std::uint64_t>>{{0, 2}});
}

TEST_CASE("star weights are asymmetric") {
  const QuotientGraph q = reduce(tt::star(3));
  REQUIRE(q.k == 2);
  const std::uint32_t center = q.class_of[0], leaf = q.class_of[1];
  CHECK(q.size[center] == 1);
  CHECK(q.size[leaf] == 3);
  // the center sees 3 leaves, each leaf sees 1 center
  for (const auto& [to, wt] : q.w[center])
    if (to == leaf) CHECK(wt == 3);
  for (const auto& [to, wt] : q.w[leaf])
    if (to == center) CHECK(wt == 1);
}

TEST_CASE("reduce rejects non-equitable colorings and directed graphs") {
  const Graph p4 = tt::path(4);
  Coloring all_same;
  all_same.c = {0, 0, 0, 0};
  CHECK_THROWS_AS(reduce(p4, all_same), precondition_error);
  CHECK_THROWS_AS(reduce(new_graph(2, {{0, 1}}, true)), precondition_error);
}

TEST_CASE("class count matches color_complexity") {
  auto g = tt::rng(31);
  for (int i = 0; i < 40; ++i) {
    const Graph gr = tt::random_graph(g, 11, i % 3 == 0);
    CHECK(reduce(gr).k == color_complexity(gr));
  }
}

TEST_CASE("quotient evaluation matches direct evaluation") {
  auto g = tt::rng(12345);
  for (int i = 0; i < 120; ++i) {
    const Graph gr = tt::random_graph(g, 10);
    const GnnSpec s = tt::random_spec(g, 1 + i % 3, 1 + i % 4);
    const QuotientGraph q = reduce(gr);
    CHECK(eval_on_quotient(s, q, gr) == gnn_eval(s, gr));
  }
}

TEST_CASE("graph-free overload rebuilds one-hot and constant inputs") {
  auto g = tt::rng(54321);
  for (int i = 0; i < 60; ++i) {
    const Graph gr = tt::random_graph(g, 9, true, 3);
    GnnSpec s = tt::random_spec(g, 3, 2);
    const QuotientGraph q = reduce(gr);
    if (i % 2 == 0) {
      s.input = InputKind::one_hot;
      s.constant_row.clear();
    }
    CHECK(eval_on_quotient(s, q) == eval_on_quotient(s, q, gr));
    CHECK(eval_on_quotient(s, q) == gnn_eval(s, gr));
  }
}

TEST_CASE("graph-free overload refuses feature inputs") {
  Graph gr = tt::complete(3);
  gr.feat = {{1}, {1}, {1}};
  auto g = tt::rng(1);
  GnnSpec s = tt::random_spec(g, 1, 1);
  s.input = InputKind::features;
  s.constant_row.clear();
  CHECK_THROWS_AS(eval_on_quotient(s, reduce(gr)), precondition_error);
}

TEST_CASE("trace exposes per-class rows") {
  const Graph c6 = tt::cycle(6);
  auto g = tt::rng(9);
  const GnnSpec s = tt::random_spec(g, 2, 2);
  const QuotientTrace t = eval_on_quotient_trace(s, reduce(c6), c6);
  REQUIRE(t.h.size() == 3);  // input + 2 layers
  for (const auto& layer : t.h) CHECK(layer.size() == 1);
  CHECK(t.out == gnn_eval(s, c6));
}

}  // TEST_SUITE
