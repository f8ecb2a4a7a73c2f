#include "wlvc/quotient.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "wlvc/errors.hpp"

namespace wlvc {

QuotientGraph reduce(const Graph& g, const Coloring& stable) {
  validate(g);
  if (g.directed) throw precondition_error("reduce: directed graphs unsupported");
  if (stable.c.size() != g.n) throw precondition_error("reduce: coloring size mismatch");

  QuotientGraph q;
  std::map<Color, std::uint32_t> cls;  // color id order fixes class order
  for (Color c : stable.c) cls.try_emplace(c, 0);
  std::uint32_t next = 0;
  for (auto& [c, idx] : cls) idx = next++;
  q.k = next;
  q.class_of.resize(g.n);
  q.size.assign(q.k, 0);
  q.rep.assign(q.k, 0);
  for (Vertex v = 0; v < g.n; ++v) {
    const std::uint32_t x = cls.at(stable.c[v]);
    q.class_of[v] = x;
    if (q.size[x] == 0) q.rep[x] = v;
    ++q.size[x];
  }
  q.label.assign(q.k, 0);
  for (std::uint32_t x = 0; x < q.k; ++x) {
    if (g.has_labels()) q.label[x] = g.labels[q.rep[x]];
    for (Vertex v = 0; v < g.n; ++v) {
      if (q.class_of[v] != x) continue;
      if (g.has_labels() && g.labels[v] != q.label[x])
        throw precondition_error("reduce: coloring does not refine vertex labels (class " +
                                 std::to_string(x) + ")");
      if (g.has_features() && g.feat[v] != g.feat[q.rep[x]])
        throw precondition_error("reduce: coloring does not refine feature rows (class " +
                                 std::to_string(x) + ")");
    }
  }

  // neighbor-class profile must be identical within a class
  q.w.resize(q.k);
  std::vector<std::uint64_t> profile(q.k), expect(q.k);
  for (std::uint32_t x = 0; x < q.k; ++x) {
    bool first = true;
    for (Vertex v = 0; v < g.n; ++v) {
      if (q.class_of[v] != x) continue;
      std::fill(profile.begin(), profile.end(), 0);
      for (Vertex u : g.adj[v]) ++profile[q.class_of[u]];
      if (first) {
        expect = profile;
        first = false;
      } else if (profile != expect) {
        throw precondition_error("reduce: coloring is not equitable at class " +
                                 std::to_string(x));
      }
    }
    for (std::uint32_t y = 0; y < q.k; ++y)
      if (expect[y] > 0) q.w[x].emplace_back(y, expect[y]);
    std::fill(expect.begin(), expect.end(), 0);
  }
  return q;
}

QuotientGraph reduce(const Graph& g) { return reduce(g, stable_coloring(g).first); }

namespace {

QuotientTrace run_quotient(const GnnSpec& s, const QuotientGraph& q, DyMat h0) {
  QuotientTrace tr;
  tr.h.push_back(std::move(h0));
  for (const GnnLayer& l : s.layers) {
    const DyMat& prev = tr.h.back();
    DyMat next(q.k, DyVec(l.b.size()));
    for (std::uint32_t x = 0; x < q.k; ++x) {
      DyVec agg(prev[x].size());
      for (const auto& [y, wt] : q.w[x]) {
        const Dyadic wd(static_cast<long long>(wt));
        for (std::size_t j = 0; j < agg.size(); ++j) agg[j] += wd * prev[y][j];
      }
      DyVec row(l.b.size());
      for (std::size_t r = 0; r < prev[x].size(); ++r) {
        if (!prev[x][r].is_zero())
          for (std::size_t c = 0; c < row.size(); ++c) row[c] += prev[x][r] * l.w1[r][c];
        if (!agg[r].is_zero())
          for (std::size_t c = 0; c < row.size(); ++c) row[c] += agg[r] * l.w2[r][c];
      }
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = pw_eval(l.act, row[c] + l.b[c]);
      next[x] = std::move(row);
    }
    tr.h.push_back(std::move(next));
  }
  DyVec total(widths(s).back());
  for (std::uint32_t x = 0; x < q.k; ++x) {
    const Dyadic sz(static_cast<long long>(q.size[x]));
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += sz * tr.h.back()[x][j];
  }
  Dyadic out = s.readout.b;
  for (std::size_t j = 0; j < total.size(); ++j) out += total[j] * s.readout.w[j];
  tr.out = pw_eval(s.readout.act, out);
  return tr;
}

}  // namespace

QuotientTrace eval_on_quotient_trace(const GnnSpec& s, const QuotientGraph& q, const Graph& g) {
  validate(s);
  if (q.class_of.size() != g.n) throw precondition_error("eval_on_quotient: quotient/graph mismatch");
  // representative rows stand in for their class
  const DyMat full = input_features(s, g);
  DyMat h(q.k);
  for (std::uint32_t x = 0; x < q.k; ++x) h[x] = full[q.rep[x]];
  return run_quotient(s, q, std::move(h));
}

// Input rows rebuilt from class labels; feature inputs need the graph.
QuotientTrace eval_on_quotient_trace(const GnnSpec& s, const QuotientGraph& q) {
  validate(s);
  DyMat h(q.k, DyVec(s.input_width));
  switch (s.input) {
    case InputKind::one_hot:
      for (std::uint32_t x = 0; x < q.k; ++x) {
        const std::uint32_t l = q.label[x];
        if (l >= s.input_width)
          throw precondition_error("eval_on_quotient: label " + std::to_string(l) +
                                   " outside input width " + std::to_string(s.input_width));
        h[x][l] = Dyadic(1);
      }
      break;
    case InputKind::constant:
      for (std::uint32_t x = 0; x < q.k; ++x) h[x] = s.constant_row;
      break;
    case InputKind::features:
      throw precondition_error("eval_on_quotient: quotient carries no feature rows");
  }
  return run_quotient(s, q, std::move(h));
}

Dyadic eval_on_quotient(const GnnSpec& s, const QuotientGraph& q, const Graph& g) {
  return eval_on_quotient_trace(s, q, g).out;
}

Dyadic eval_on_quotient(const GnnSpec& s, const QuotientGraph& q) {
  return eval_on_quotient_trace(s, q).out;
}

}  // namespace wlvc
