#include "wlvc/fnn.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "wlvc/errors.hpp"
#include "wlvc/parallel.hpp"
#include "wlvc/quotient.hpp"

namespace wlvc {

std::size_t FnnDag::edge_count() const {
  std::size_t e = 0;
  for (const auto& v : in_edges) e += v.size();
  return e;
}

void validate(const FnnDag& d) {
  const std::size_t n = d.nodes.size();
  if (d.in_edges.size() != n || d.topo.size() != n)
    throw precondition_error("fnn: node table sizes differ");
  std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t id = d.topo[i];
    if (id >= n || pos[id] != static_cast<std::size_t>(-1))
      throw precondition_error("fnn: topo is not a permutation of the nodes");
    pos[id] = i;
  }
  std::vector<std::uint8_t> is_input(n, 0), is_output(n, 0), has_out(n, 0);
  for (std::uint32_t id : d.inputs) {
    if (id >= n || is_input[id]) throw precondition_error("fnn: bad input list");
    is_input[id] = 1;
  }
  for (std::uint32_t id : d.outputs) {
    if (id >= n || is_output[id]) throw precondition_error("fnn: bad output list");
    is_output[id] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (is_input[v]) {
      if (d.nodes[v].act >= 0 || !d.in_edges[v].empty())
        throw precondition_error("fnn: input node " + std::to_string(v) +
                                 " has edges or an activation");
    } else {
      if (d.nodes[v].act < 0 ||
          static_cast<std::size_t>(d.nodes[v].act) >= d.acts.size())
        throw precondition_error("fnn: node " + std::to_string(v) +
                                 " activation index out of range");
      if (d.in_edges[v].empty())
        throw precondition_error("fnn: non-input node " + std::to_string(v) +
                                 " has no incoming edges");
    }
    for (const auto& [src, wt] : d.in_edges[v]) {
      (void)wt;
      if (src >= n) throw precondition_error("fnn: edge source out of range");
      if (pos[src] >= pos[v])
        throw precondition_error("fnn: topo order violates edge " + std::to_string(src) +
                                 " -> " + std::to_string(v));
      has_out[src] = 1;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (is_output[v] && has_out[v])
      throw precondition_error("fnn: output node " + std::to_string(v) + " has outgoing edges");
    if (!is_output[v] && !has_out[v])
      throw precondition_error("fnn: sink node " + std::to_string(v) + " is not an output");
  }
  for (const auto& a : d.acts) validate(a);
}

std::vector<Dyadic> fnn_eval(const FnnDag& d, const DyVec& in, std::size_t threads) {
  validate(d);
  if (in.size() != d.inputs.size())
    throw precondition_error("fnn_eval: expected " + std::to_string(d.inputs.size()) +
                             " inputs, got " + std::to_string(in.size()));
  const std::size_t n = d.nodes.size();
  std::vector<Dyadic> val(n);
  for (std::size_t i = 0; i < d.inputs.size(); ++i) val[d.inputs[i]] = in[i];

  const auto eval_node = [&](std::uint32_t v) {
    Dyadic acc = d.nodes[v].bias;
    for (const auto& [src, wt] : d.in_edges[v]) {
      if (wt.is_zero() || val[src].is_zero()) continue;
      acc += val[src] * wt;
    }
    val[v] = pw_eval(d.acts[d.nodes[v].act], acc);
  };

  if (resolve_threads(threads) <= 1) {
    for (std::uint32_t v : d.topo)
      if (d.nodes[v].act >= 0) eval_node(v);
  } else {
    std::vector<std::uint32_t> level(n, 0);
    std::vector<std::vector<std::uint32_t>> buckets;
    for (std::uint32_t v : d.topo) {
      if (d.nodes[v].act < 0) continue;
      std::uint32_t lv = 0;
      for (const auto& [src, wt] : d.in_edges[v]) {
        (void)wt;
        lv = std::max(lv, level[src] + 1);
      }
      level[v] = lv;
      if (buckets.size() < lv) buckets.resize(lv);
      buckets[lv - 1].push_back(v);
    }
    for (const auto& bucket : buckets)
      parallel_for(bucket.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) eval_node(bucket[i]);
      });
  }

  std::vector<Dyadic> out;
  out.reserve(d.outputs.size());
  for (std::uint32_t v : d.outputs) out.push_back(val[v]);
  return out;
}

UnrolledFnn unroll_multi(const GnnSpec& s, const std::vector<Graph>& gs) {
  validate(s);
  if (gs.empty()) throw precondition_error("unroll: empty graph list");
  for (const Graph& g : gs) {
    validate(g);
    if (g.directed) throw precondition_error("unroll: directed graphs unsupported");
  }
  const std::vector<std::size_t> w = widths(s);
  const std::size_t L = s.layers.size();

  UnrolledFnn u;
  FnnDag& d = u.dag;
  std::vector<std::int32_t> layer_act(L + 1);
  const auto act_index = [&](const PiecewisePoly& a) {
    for (std::size_t i = 0; i < d.acts.size(); ++i)
      if (same_activation(d.acts[i], a)) return static_cast<std::int32_t>(i);
    d.acts.push_back(a);
    return static_cast<std::int32_t>(d.acts.size() - 1);
  };
  for (std::size_t t = 0; t < L; ++t) layer_act[t] = act_index(s.layers[t].act);
  layer_act[L] = act_index(s.readout.act);

  // block base ids: base[i][t] = first node of graph i's layer-t block
  std::vector<std::vector<std::size_t>> base(gs.size(), std::vector<std::size_t>(L + 1));
  std::size_t next = 0;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t t = 0; t <= L; ++t) {
      base[i][t] = next;
      next += gs[i].n * w[t];
    }
  const std::size_t total = next + gs.size();
  d.nodes.resize(total);
  d.in_edges.resize(total);
  u.meta.resize(total);

  for (std::size_t i = 0; i < gs.size(); ++i) {
    const Graph& g = gs[i];
    for (Vertex v = 0; v < g.n; ++v)
      for (std::size_t c = 0; c < w[0]; ++c) {
        const std::size_t id = base[i][0] + v * w[0] + c;
        u.meta[id] = {static_cast<std::uint32_t>(i), 0, v, static_cast<std::uint32_t>(c)};
        d.inputs.push_back(static_cast<std::uint32_t>(id));
      }
    for (std::size_t t = 1; t <= L; ++t) {
      const GnnLayer& l = s.layers[t - 1];
      for (Vertex v = 0; v < g.n; ++v)
        for (std::size_t j = 0; j < w[t]; ++j) {
          const std::size_t id = base[i][t] + v * w[t] + j;
          u.meta[id] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t), v,
                        static_cast<std::uint32_t>(j)};
          d.nodes[id].bias = l.b[j];
          d.nodes[id].act = layer_act[t - 1];
          auto& in = d.in_edges[id];
          in.reserve(w[t - 1] * (1 + g.adj[v].size()));
          for (std::size_t c = 0; c < w[t - 1]; ++c)
            in.emplace_back(static_cast<std::uint32_t>(base[i][t - 1] + v * w[t - 1] + c),
                            l.w1[c][j]);
          for (Vertex nb : g.adj[v])
            for (std::size_t c = 0; c < w[t - 1]; ++c)
              in.emplace_back(static_cast<std::uint32_t>(base[i][t - 1] + nb * w[t - 1] + c),
                              l.w2[c][j]);
        }
    }
  }
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::size_t id = next + i;
    u.meta[id] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(L + 1), 0, 0};
    d.nodes[id].bias = s.readout.b;
    d.nodes[id].act = layer_act[L];
    auto& in = d.in_edges[id];
    in.reserve(gs[i].n * w[L]);
    for (Vertex v = 0; v < gs[i].n; ++v)
      for (std::size_t j = 0; j < w[L]; ++j)
        in.emplace_back(static_cast<std::uint32_t>(base[i][L] + v * w[L] + j), s.readout.w[j]);
    d.outputs.push_back(static_cast<std::uint32_t>(id));
  }
  d.topo.resize(total);
  std::iota(d.topo.begin(), d.topo.end(), 0u);
  validate(d);
  return u;
}

UnrolledFnn unroll(const GnnSpec& s, const Graph& g) { return unroll_multi(s, {g}); }

DyVec unroll_inputs(const UnrolledFnn& u, const GnnSpec& s, const std::vector<Graph>& gs) {
  std::vector<DyMat> feats;
  feats.reserve(gs.size());
  for (const Graph& g : gs) feats.push_back(input_features(s, g));
  DyVec in;
  in.reserve(u.dag.inputs.size());
  for (std::uint32_t id : u.dag.inputs) {
    if (id >= u.meta.size()) throw precondition_error("unroll_inputs: meta table too short");
    const UnrollMeta& m = u.meta[id];
    if (m.graph >= feats.size() || m.vertex >= feats[m.graph].size() ||
        m.channel >= feats[m.graph][m.vertex].size())
      throw precondition_error("unroll_inputs: graph list does not match the unrolling");
    in.push_back(feats[m.graph][m.vertex][m.channel]);
  }
  return in;
}

UnrolledFnn collapse_fnn(const UnrolledFnn& u, const std::vector<Graph>& gs,
                         const std::vector<Coloring>& stable) {
  validate(u.dag);
  if (u.meta.size() != u.dag.nodes.size())
    throw precondition_error("collapse: meta table size mismatch");
  if (gs.size() != stable.size())
    throw precondition_error("collapse: one coloring per graph required");
  std::vector<QuotientGraph> q;
  q.reserve(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) q.push_back(reduce(gs[i], stable[i]));

  const std::size_t n = u.dag.nodes.size();
  std::vector<std::uint8_t> is_output(n, 0);
  for (std::uint32_t id : u.dag.outputs) is_output[id] = 1;

  UnrolledFnn out;
  out.dag.acts = u.dag.acts;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t>
      id_of;
  std::vector<std::uint32_t> remap(n);
  std::vector<std::uint32_t> rep_node;  // original node whose edges a merged node keeps
  for (std::size_t v = 0; v < n; ++v) {
    const UnrollMeta& m = u.meta[v];
    if (m.graph >= gs.size())
      throw precondition_error("collapse: meta references a missing graph");
    std::uint32_t cls = 0;
    if (!is_output[v]) {
      if (m.vertex >= q[m.graph].class_of.size())
        throw precondition_error("collapse: meta references a missing vertex");
      cls = q[m.graph].class_of[m.vertex];
    }
    const auto [it, inserted] =
        id_of.try_emplace({m.graph, m.layer, cls, m.channel},
                          static_cast<std::uint32_t>(out.dag.nodes.size()));
    if (inserted) {
      out.dag.nodes.push_back(u.dag.nodes[v]);
      UnrollMeta nm = m;
      if (!is_output[v]) nm.vertex = q[m.graph].rep[cls];
      out.meta.push_back(nm);
      rep_node.push_back(static_cast<std::uint32_t>(v));
    }
    remap[v] = it->second;
  }

  out.dag.in_edges.resize(out.dag.nodes.size());
  for (std::size_t nv = 0; nv < out.dag.nodes.size(); ++nv) {
    std::map<std::uint32_t, Dyadic> acc;
    for (const auto& [src, wt] : u.dag.in_edges[rep_node[nv]]) acc[remap[src]] += wt;
    auto& in = out.dag.in_edges[nv];
    in.reserve(acc.size());
    for (auto& [src, wt] : acc) in.emplace_back(src, std::move(wt));
  }

  std::vector<std::uint8_t> seen(out.dag.nodes.size(), 0);
  for (std::uint32_t id : u.dag.inputs)
    if (!seen[remap[id]]) {
      seen[remap[id]] = 1;
      out.dag.inputs.push_back(remap[id]);
    }
  for (std::uint32_t id : u.dag.outputs) out.dag.outputs.push_back(remap[id]);
  out.dag.topo.resize(out.dag.nodes.size());
  std::iota(out.dag.topo.begin(), out.dag.topo.end(), 0u);
  validate(out.dag);
  return out;
}

std::size_t nodes_at_layer(const UnrolledFnn& u, std::uint32_t t) {
  std::size_t c = 0;
  for (const UnrollMeta& m : u.meta) c += m.layer == t;
  return c;
}

}  // namespace wlvc
