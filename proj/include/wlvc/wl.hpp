#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wlvc/graph.hpp"

namespace wlvc {

using Color = std::uint64_t;

struct Coloring {
  std::vector<Color> c;
};

// Sorted (color, count) pairs.
struct Histogram {
  std::vector<std::pair<Color, std::uint64_t>> bins;

  friend bool operator==(const Histogram& a, const Histogram& b) { return a.bins == b.bins; }
  friend bool operator<(const Histogram& a, const Histogram& b) { return a.bins < b.bins; }
};

struct WlOptions {
  std::size_t max_iters = static_cast<std::size_t>(-1);  // refinement rounds after iteration 0
  bool stop_when_stable = true;
  bool use_labels = true;       // seed iteration 0 from vertex labels when present
  bool use_edge_labels = false;  // fold edge labels into the neighbor multisets
  std::size_t threads = 1;
};

// One shared-dictionary refinement run over a set of graphs. Fresh color ids
// are never reused across iterations, so a color injectively encodes its
// whole refinement history. iters[t][g] is graph g's coloring at iteration t;
// stable_iter is the smallest s whose partition equals iteration s+1's
// (set only when the run got far enough to observe it).
struct WlRun {
  std::vector<std::vector<Coloring>> iters;
  std::vector<std::uint64_t> distinct;  // colors over all graphs, per iteration
  std::optional<std::size_t> stable_iter;
  std::uint64_t colors_used = 0;

  // Iteration to read results at for a requested depth L: refining past the
  // stable partition never changes any distinguishability outcome.
  std::size_t effective_iter(std::size_t L) const;
};

WlRun wl1_refine(const std::vector<Graph>& gs, const WlOptions& opts = {});

// Stable coloring of a single graph plus the number of refinement rounds
// computed to confirm stability (at most |V|).
std::pair<Coloring, std::size_t> stable_coloring(const Graph& g, std::size_t threads = 1);

Histogram histogram(const Coloring& col);

// Number of distinct iteration-L color histograms over the set.
std::size_t count_distinguishable(const std::vector<Graph>& gs, std::size_t L,
                                  const WlOptions& opts = {});
// Same, for every depth 0..L at once.
std::vector<std::size_t> count_distinguishable_upto(const std::vector<Graph>& gs, std::size_t L,
                                                    const WlOptions& opts = {});

// Size of the stable partition.
std::size_t color_complexity(const Graph& g, std::size_t threads = 1);

// Oblivious tuple refinement over V(g)^k, k in {2, 3}. Tuples are ranked in
// lexicographic order (first component most significant).
struct TupleColoring {
  std::size_t k = 0;
  Vertex n = 0;
  std::vector<Color> c;
};

struct WlkRun {
  std::vector<std::vector<TupleColoring>> iters;
  std::vector<std::uint64_t> distinct;
  std::optional<std::size_t> stable_iter;
  std::uint64_t colors_used = 0;

  std::size_t effective_iter(std::size_t L) const;
};

WlkRun wlk_refine(const std::vector<Graph>& gs, std::size_t k, const WlOptions& opts = {});

Histogram histogram(const TupleColoring& col);

// True when the shared run tells the two graphs apart at the stable point.
bool wlk_distinguishes(const Graph& a, const Graph& b, std::size_t k, std::size_t threads = 1);

}  // namespace wlvc
