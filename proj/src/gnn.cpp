#include "wlvc/gnn.hpp"

#include <algorithm>
#include <string>

#include "wlvc/errors.hpp"
#include "wlvc/parallel.hpp"

namespace wlvc {

namespace {

void check_matrix(const DyMat& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.size() != rows)
    throw precondition_error(std::string("gnn: ") + what + " has " + std::to_string(m.size()) +
                             " rows, expected " + std::to_string(rows));
  for (const auto& r : m)
    if (r.size() != cols)
      throw precondition_error(std::string("gnn: ") + what + " row width " +
                               std::to_string(r.size()) + ", expected " + std::to_string(cols));
}

DyVec mat_apply(const DyVec& row, const DyMat& m) {
  DyVec out(m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (row[r].is_zero()) continue;
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (m[r][c].is_zero()) continue;
      out[c] += row[r] * m[r][c];
    }
  }
  return out;
}

}  // namespace

void validate(const GnnSpec& s) {
  if (s.input_width == 0) throw precondition_error("gnn: zero input width");
  if (s.input == InputKind::constant && s.constant_row.size() != s.input_width)
    throw precondition_error("gnn: constant row width mismatch");
  std::size_t w = s.input_width;
  for (std::size_t t = 0; t < s.layers.size(); ++t) {
    const GnnLayer& l = s.layers[t];
    if (l.b.empty()) throw precondition_error("gnn: layer " + std::to_string(t) + " empty");
    check_matrix(l.w1, w, l.b.size(), "W1");
    check_matrix(l.w2, w, l.b.size(), "W2");
    validate(l.act);
    w = l.b.size();
  }
  if (s.readout.w.size() != w) throw precondition_error("gnn: readout width mismatch");
  validate(s.readout.act);
}

std::vector<std::size_t> widths(const GnnSpec& s) {
  std::vector<std::size_t> w{s.input_width};
  for (const auto& l : s.layers) w.push_back(l.b.size());
  return w;
}

DyMat input_features(const GnnSpec& s, const Graph& g) {
  DyMat h(g.n, DyVec(s.input_width));
  switch (s.input) {
    case InputKind::one_hot:
      if (!g.has_labels() && s.input_width != 1)
        throw precondition_error("gnn: one-hot input needs vertex labels");
      for (Vertex v = 0; v < g.n; ++v) {
        const std::uint32_t l = g.has_labels() ? g.labels[v] : 0;
        if (l >= s.input_width)
          throw precondition_error("gnn: label " + std::to_string(l) +
                                   " outside input width " + std::to_string(s.input_width));
        h[v][l] = Dyadic(1);
      }
      break;
    case InputKind::constant:
      for (Vertex v = 0; v < g.n; ++v) h[v] = s.constant_row;
      break;
    case InputKind::features:
      if (!g.has_features()) throw precondition_error("gnn: graph has no feature rows");
      for (Vertex v = 0; v < g.n; ++v) {
        if (g.feat[v].size() != s.input_width)
          throw precondition_error("gnn: feature row width mismatch");
        for (std::size_t j = 0; j < s.input_width; ++j) h[v][j] = Dyadic(g.feat[v][j]);
      }
      break;
  }
  return h;
}

GnnTrace gnn_eval_trace(const GnnSpec& s, const Graph& g, std::size_t threads) {
  validate(s);
  validate(g);
  if (g.directed) throw precondition_error("gnn_eval: directed graphs unsupported");
  GnnTrace tr;
  tr.h.push_back(input_features(s, g));
  for (const GnnLayer& l : s.layers) {
    const DyMat& prev = tr.h.back();
    DyMat next(g.n, DyVec(l.b.size()));
    parallel_for(g.n, threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t v = b; v < e; ++v) {
        DyVec agg(prev.empty() ? 0 : prev[v].size());
        for (Vertex u : g.adj[v])
          for (std::size_t j = 0; j < agg.size(); ++j) agg[j] += prev[u][j];
        DyVec row = mat_apply(prev[v], l.w1);
        const DyVec row2 = mat_apply(agg, l.w2);
        for (std::size_t j = 0; j < row.size(); ++j) {
          row[j] += row2[j] + l.b[j];
          row[j] = pw_eval(l.act, row[j]);
        }
        next[v] = std::move(row);
      }
    });
    tr.h.push_back(std::move(next));
  }
  DyVec total(widths(s).back());
  for (Vertex v = 0; v < g.n; ++v)
    for (std::size_t j = 0; j < total.size(); ++j) total[j] += tr.h.back()[v][j];
  Dyadic out = s.readout.b;
  for (std::size_t j = 0; j < total.size(); ++j) out += total[j] * s.readout.w[j];
  tr.out = pw_eval(s.readout.act, out);
  return tr;
}

Dyadic gnn_eval(const GnnSpec& s, const Graph& g, std::size_t threads) {
  return gnn_eval_trace(s, g, threads).out;
}

std::size_t param_count(const GnnSpec& s) {
  std::size_t p = 0;
  for (const auto& l : s.layers) {
    const std::size_t in = l.w1.size(), out = l.b.size();
    p += 2 * in * out + out;
  }
  return p + s.readout.w.size() + 1;
}

std::size_t param_count_uniform(std::size_t d, std::size_t L) {
  return d * (2 * d * L + L + 1) + 1;
}

std::size_t spec_bitlength(const GnnSpec& s) {
  std::size_t bits = 0;
  const auto scan_mat = [&](const DyMat& m) {
    for (const auto& r : m)
      for (const auto& x : r) bits = std::max(bits, encoded_bits(x));
  };
  for (const auto& l : s.layers) {
    scan_mat(l.w1);
    scan_mat(l.w2);
    for (const auto& x : l.b) bits = std::max(bits, encoded_bits(x));
    bits = std::max(bits, activation_bits(l.act));
  }
  for (const auto& x : s.readout.w) bits = std::max(bits, encoded_bits(x));
  bits = std::max(bits, encoded_bits(s.readout.b));
  bits = std::max(bits, activation_bits(s.readout.act));
  return bits;
}

namespace {

// Splits the mantissa into k chunks of ceil(bits/k) bits, least significant
// first; chunk j keeps the original sign and exponent shifted by its offset.
std::vector<Dyadic> split_entry(const Dyadic& x, std::size_t k) {
  std::vector<Dyadic> parts(k);
  if (x.is_zero()) return parts;
  const std::size_t bits = x.mantissa_bits();
  const std::size_t chunk = (bits + k - 1) / k;
  const bigint mag = abs(x.mantissa());
  const bigint mask = (bigint(1) << chunk) - 1;
  for (std::size_t j = 0; j < k; ++j) {
    bigint piece = (mag >> (j * chunk)) & mask;
    if (piece.is_zero()) continue;
    if (x.sign() < 0) piece = -piece;
    parts[j] = Dyadic(piece, x.exponent() + static_cast<long long>(j * chunk));
  }
  return parts;
}

}  // namespace

GnnSpec expand_bitlength(const GnnSpec& s, std::size_t k) {
  validate(s);
  if (k == 0) throw precondition_error("expand_bitlength: k must be positive");
  if (k == 1) return s;
  std::size_t max_bits = 0;
  for (const auto& l : s.layers)
    for (const auto& r : l.w2)
      for (const auto& x : r) max_bits = std::max(max_bits, x.mantissa_bits());
  if (max_bits < 2)
    throw precondition_error(
        "expand_bitlength: k larger than representable split (aggregation mantissas are " +
        std::to_string(max_bits) + " bit)");

  GnnSpec out;
  out.input = s.input;
  out.input_width = s.input_width;
  out.constant_row = s.constant_row;
  out.readout = s.readout;
  const std::vector<std::size_t> w = widths(s);
  for (std::size_t t = 0; t < s.layers.size(); ++t) {
    const GnnLayer& l = s.layers[t];
    const std::size_t in = w[t], d = w[t + 1];
    // stage one: aggregate with the k summand blocks, pass h through block 0
    GnnLayer wide;
    wide.w1 = DyMat(in, DyVec(k * d));
    wide.w2 = DyMat(in, DyVec(k * d));
    for (std::size_t r = 0; r < in; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        wide.w1[r][c] = l.w1[r][c];
        const auto parts = split_entry(l.w2[r][c], k);
        for (std::size_t j = 0; j < k; ++j) wide.w2[r][j * d + c] = parts[j];
      }
    wide.b = DyVec(k * d);
    wide.act = act_identity();
    out.layers.push_back(std::move(wide));
    // stage two: the summing matrix, then the original bias and activation
    GnnLayer sum;
    sum.w1 = DyMat(k * d, DyVec(d));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < d; ++c) sum.w1[j * d + c][c] = Dyadic(1);
    sum.w2 = DyMat(k * d, DyVec(d));
    sum.b = l.b;
    sum.act = l.act;
    out.layers.push_back(std::move(sum));
  }
  return out;
}

}  // namespace wlvc
