#include "wlvc/wl.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "wlvc/errors.hpp"
#include "wlvc/parallel.hpp"

namespace wlvc {

namespace {

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using SigMap = std::unordered_map<std::vector<std::uint64_t>, Color, WordsHash>;

// flat index of (graph, vertex) pairs
struct Flat {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

Flat flatten(const std::vector<Graph>& gs) {
  Flat f;
  f.offset.reserve(gs.size());
  for (const Graph& g : gs) {
    f.offset.push_back(f.total);
    f.total += g.n;
  }
  return f;
}

std::uint64_t count_distinct(const std::vector<Coloring>& cols) {
  std::vector<Color> all;
  for (const auto& c : cols) all.insert(all.end(), c.c.begin(), c.c.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size();
}

}  // namespace

std::size_t WlRun::effective_iter(std::size_t L) const {
  const std::size_t last = iters.size() - 1;
  if (stable_iter && *stable_iter < L) return *stable_iter;
  return L < last ? L : last;
}

std::size_t WlkRun::effective_iter(std::size_t L) const {
  const std::size_t last = iters.size() - 1;
  if (stable_iter && *stable_iter < L) return *stable_iter;
  return L < last ? L : last;
}

WlRun wl1_refine(const std::vector<Graph>& graphs, const WlOptions& opts) {
  std::vector<Graph> gs;
  gs.reserve(graphs.size());
  bool edge_labeled = opts.use_edge_labels && !graphs.empty() && graphs.front().has_edge_labels();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    validate(graphs[i]);
    gs.push_back(graphs[i].directed ? as_undirected(graphs[i]) : graphs[i]);
    if (opts.use_edge_labels && graphs[i].has_edge_labels() != edge_labeled)
      throw precondition_error("wl1_refine: graphs mix edge-labeled and unlabeled");
  }
  // symmetrizing drops edge labels; keep them only for genuinely undirected input
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (graphs[i].directed) edge_labeled = false;

  WlRun run;
  const Flat flat = flatten(gs);

  // iteration 0: vertex labels through the shared dictionary, or one color
  std::vector<Coloring> cur(gs.size());
  bool labeled = opts.use_labels && !gs.empty() && gs.front().has_labels();
  for (const Graph& g : gs)
    if (opts.use_labels && g.has_labels() != labeled)
      throw precondition_error("wl1_refine: graphs mix labeled and unlabeled vertices");
  {
    std::unordered_map<std::uint32_t, Color> seed;
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      cur[gi].c.resize(gs[gi].n);
      for (Vertex v = 0; v < gs[gi].n; ++v) {
        const std::uint32_t key = labeled ? gs[gi].labels[v] : 0;
        auto [it, fresh] = seed.try_emplace(key, run.colors_used);
        if (fresh) ++run.colors_used;
        cur[gi].c[v] = it->second;
      }
    }
  }
  run.iters.push_back(cur);
  run.distinct.push_back(flat.total == 0 ? 0 : count_distinct(cur));

  for (std::size_t t = 1; t <= opts.max_iters; ++t) {
    if (flat.total == 0) break;
    // signatures in parallel, dictionary assignment in scan order
    std::vector<std::vector<std::uint64_t>> sig(flat.total);
    parallel_for(flat.total, opts.threads, [&](std::size_t b, std::size_t e) {
      std::size_t gi = 0;
      while (gi + 1 < gs.size() && flat.offset[gi + 1] <= b) ++gi;
      for (std::size_t idx = b; idx < e; ++idx) {
        while (gi + 1 < gs.size() && flat.offset[gi + 1] <= idx) ++gi;
        const Graph& g = gs[gi];
        const Vertex v = static_cast<Vertex>(idx - flat.offset[gi]);
        const auto& col = cur[gi].c;
        auto& s = sig[idx];
        if (edge_labeled) {
          std::vector<std::pair<std::uint64_t, std::uint64_t>> nb;
          nb.reserve(g.adj[v].size());
          for (std::size_t i = 0; i < g.adj[v].size(); ++i)
            nb.emplace_back(g.elab[v][i], col[g.adj[v][i]]);
          std::sort(nb.begin(), nb.end());
          s.reserve(1 + 2 * nb.size());
          s.push_back(col[v]);
          for (const auto& [el, c] : nb) {
            s.push_back(el);
            s.push_back(c);
          }
        } else {
          s.reserve(1 + g.adj[v].size());
          s.push_back(col[v]);
          const std::size_t base = s.size();
          for (Vertex u : g.adj[v]) s.push_back(col[u]);
          std::sort(s.begin() + base, s.end());
        }
      }
    });

    SigMap dict;
    std::vector<Coloring> next(gs.size());
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      next[gi].c.resize(gs[gi].n);
      for (Vertex v = 0; v < gs[gi].n; ++v) {
        auto [it, fresh] = dict.try_emplace(std::move(sig[flat.offset[gi] + v]), run.colors_used);
        if (fresh) ++run.colors_used;
        next[gi].c[v] = it->second;
      }
    }
    cur = std::move(next);
    run.iters.push_back(cur);
    run.distinct.push_back(dict.size());
    if (opts.stop_when_stable && run.distinct[t] == run.distinct[t - 1]) break;
  }
  for (std::size_t s = 0; s + 1 < run.distinct.size(); ++s)
    if (run.distinct[s + 1] == run.distinct[s]) {
      run.stable_iter = s;
      break;
    }
  return run;
}

std::pair<Coloring, std::size_t> stable_coloring(const Graph& g, std::size_t threads) {
  if (g.n == 0) return {Coloring{}, 0};
  WlOptions opts;
  opts.max_iters = g.n;
  opts.threads = threads;
  const WlRun run = wl1_refine({g}, opts);
  if (!run.stable_iter)
    throw internal_error("stable_coloring: no fixed point within |V| iterations");
  return {run.iters[*run.stable_iter][0], *run.stable_iter + 1};
}

Histogram histogram(const Coloring& col) {
  std::vector<Color> c = col.c;
  std::sort(c.begin(), c.end());
  Histogram h;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    h.bins.emplace_back(c[i], j - i);
    i = j;
  }
  return h;
}

namespace {

std::size_t distinct_histograms(const std::vector<Coloring>& cols) {
  std::vector<Histogram> hs;
  hs.reserve(cols.size());
  for (const auto& c : cols) hs.push_back(histogram(c));
  std::sort(hs.begin(), hs.end());
  return static_cast<std::size_t>(
      std::unique(hs.begin(), hs.end()) - hs.begin());
}

}  // namespace

std::size_t count_distinguishable(const std::vector<Graph>& gs, std::size_t L,
                                  const WlOptions& opts) {
  WlOptions o = opts;
  o.max_iters = L;
  const WlRun run = wl1_refine(gs, o);
  return distinct_histograms(run.iters[run.effective_iter(L)]);
}

std::vector<std::size_t> count_distinguishable_upto(const std::vector<Graph>& gs, std::size_t L,
                                                    const WlOptions& opts) {
  WlOptions o = opts;
  o.max_iters = L;
  const WlRun run = wl1_refine(gs, o);
  std::vector<std::size_t> counts;
  counts.reserve(L + 1);
  for (std::size_t t = 0; t <= L; ++t)
    counts.push_back(distinct_histograms(run.iters[run.effective_iter(t)]));
  return counts;
}

std::size_t color_complexity(const Graph& g, std::size_t threads) {
  return histogram(stable_coloring(g, threads).first).bins.size();
}

namespace {

constexpr std::size_t kMaxTupleSpace = std::size_t(1) << 24;

std::uint64_t pair_code(const Graph& g, Vertex a, Vertex b) {
  if (a == b) return 0;
  const auto& row = g.adj[a];
  const auto it = std::lower_bound(row.begin(), row.end(), b);
  if (it == row.end() || *it != b) return 1;
  if (!g.has_edge_labels()) return 2;
  return 2 + static_cast<std::uint64_t>(g.elab[a][it - row.begin()]);
}

}  // namespace

WlkRun wlk_refine(const std::vector<Graph>& graphs, std::size_t k, const WlOptions& opts) {
  if (k < 2 || k > 3)
    throw precondition_error("wlk_refine: k must be 2 or 3, got " + std::to_string(k));
  std::vector<Graph> gs;
  gs.reserve(graphs.size());
  for (const Graph& g : graphs) {
    validate(g);
    gs.push_back(g.directed ? as_undirected(g) : g);
  }
  std::vector<std::size_t> spaces;
  std::size_t total = 0;
  for (const Graph& g : gs) {
    std::size_t sz = 1;
    for (std::size_t i = 0; i < k; ++i) sz *= g.n;
    if (sz > kMaxTupleSpace)
      throw precondition_error("wlk_refine: tuple space too large for order " +
                               std::to_string(g.n));
    spaces.push_back(sz);
    total += sz;
  }
  const bool labeled = opts.use_labels && !gs.empty() && gs.front().has_labels();
  for (const Graph& g : gs)
    if (opts.use_labels && g.has_labels() != labeled)
      throw precondition_error("wlk_refine: graphs mix labeled and unlabeled vertices");

  WlkRun run;
  std::vector<TupleColoring> cur(gs.size());

  // iteration 0: atomic types through the shared dictionary
  {
    SigMap dict;
    std::vector<Vertex> tup(k);
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      const Graph& g = gs[gi];
      cur[gi] = {k, g.n, std::vector<Color>(spaces[gi])};
      for (std::size_t idx = 0; idx < spaces[gi]; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = k; i-- > 0;) {
          tup[i] = static_cast<Vertex>(rest % g.n);
          rest /= g.n;
        }
        std::vector<std::uint64_t> sig;
        sig.reserve(k * (k - 1) / 2 + (labeled ? k : 0));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) sig.push_back(pair_code(g, tup[i], tup[j]));
        if (labeled)
          for (std::size_t i = 0; i < k; ++i) sig.push_back(g.labels[tup[i]]);
        auto [it, fresh] = dict.try_emplace(std::move(sig), run.colors_used);
        if (fresh) ++run.colors_used;
        cur[gi].c[idx] = it->second;
      }
    }
    run.distinct.push_back(dict.size());
  }
  run.iters.push_back(cur);

  for (std::size_t t = 1; t <= opts.max_iters; ++t) {
    if (total == 0) break;
    std::vector<std::vector<std::vector<std::uint64_t>>> sig(gs.size());
    for (std::size_t gi = 0; gi < gs.size(); ++gi) sig[gi].resize(spaces[gi]);
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      const Graph& g = gs[gi];
      const auto& col = cur[gi].c;
      // stride of component j in the rank encoding
      std::vector<std::size_t> stride(k, 1);
      for (std::size_t j = k - 1; j-- > 0;) stride[j] = stride[j + 1] * g.n;
      parallel_for(spaces[gi], opts.threads, [&](std::size_t b, std::size_t e) {
        std::vector<Color> bucket(g.n);
        for (std::size_t idx = b; idx < e; ++idx) {
          auto& s = sig[gi][idx];
          s.reserve(1 + k * g.n);
          s.push_back(col[idx]);
          for (std::size_t j = 0; j < k; ++j) {
            const std::size_t digit = (idx / stride[j]) % g.n;
            const std::size_t base = idx - digit * stride[j];
            for (Vertex w = 0; w < g.n; ++w) bucket[w] = col[base + w * stride[j]];
            std::sort(bucket.begin(), bucket.end());
            s.insert(s.end(), bucket.begin(), bucket.end());
          }
        }
      });
    }
    SigMap dict;
    std::vector<TupleColoring> next(gs.size());
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      next[gi] = {k, gs[gi].n, std::vector<Color>(spaces[gi])};
      for (std::size_t idx = 0; idx < spaces[gi]; ++idx) {
        auto [it, fresh] = dict.try_emplace(std::move(sig[gi][idx]), run.colors_used);
        if (fresh) ++run.colors_used;
        next[gi].c[idx] = it->second;
      }
    }
    cur = std::move(next);
    run.iters.push_back(cur);
    run.distinct.push_back(dict.size());
    if (opts.stop_when_stable && run.distinct[t] == run.distinct[t - 1]) break;
  }
  for (std::size_t s = 0; s + 1 < run.distinct.size(); ++s)
    if (run.distinct[s + 1] == run.distinct[s]) {
      run.stable_iter = s;
      break;
    }
  return run;
}

Histogram histogram(const TupleColoring& col) {
  Coloring c;
  c.c = col.c;
  return histogram(c);
}

bool wlk_distinguishes(const Graph& a, const Graph& b, std::size_t k, std::size_t threads) {
  WlOptions opts;
  opts.threads = threads;
  std::size_t space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= std::max(a.n, b.n);
  opts.max_iters = space + 1;
  const WlkRun run = wlk_refine({a, b}, k, opts);
  for (const auto& iter : run.iters)
    if (!(histogram(iter[0]) == histogram(iter[1]))) return true;
  return false;
}

}  // namespace wlvc
