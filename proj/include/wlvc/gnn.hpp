#pragma once

#include <cstdint>
#include <vector>

#include "wlvc/activation.hpp"
#include "wlvc/dyadic.hpp"
#include "wlvc/graph.hpp"

namespace wlvc {

// Layer semantics: h_v <- act(h_v W1 + (sum of h_u over neighbors u) W2 + b),
// matrices mapping row vectors of the previous width to the layer width.
struct GnnLayer {
  DyMat w1, w2;
  DyVec b;
  PiecewisePoly act;
};

// Readout: act(sum over vertices of h_v . w + b), a single exact value.
struct GnnReadout {
  DyVec w;
  Dyadic b;
  PiecewisePoly act;
};

enum class InputKind : std::uint8_t {
  one_hot,   // one-hot of the vertex label, width = label alphabet bound
  constant,  // the same fixed row at every vertex
  features,  // the graph's 0/1 feature rows
};

struct GnnSpec {
  InputKind input = InputKind::one_hot;
  std::size_t input_width = 0;
  DyVec constant_row;  // used when input == constant
  std::vector<GnnLayer> layers;
  GnnReadout readout;
};

void validate(const GnnSpec& s);  // shape checks; throws precondition_error

// input_width then each layer's output width.
std::vector<std::size_t> widths(const GnnSpec& s);

// Per-vertex input rows for a graph under the spec's input mode.
DyMat input_features(const GnnSpec& s, const Graph& g);

Dyadic gnn_eval(const GnnSpec& s, const Graph& g, std::size_t threads = 1);

struct GnnTrace {
  std::vector<DyMat> h;  // h[t][v], t = 0 .. L
  Dyadic out;
};
GnnTrace gnn_eval_trace(const GnnSpec& s, const Graph& g, std::size_t threads = 1);

// Number of dyadic parameters (all matrix and bias entries, the readout
// vector, and the readout bias). Uniform width d over L layers gives
// d(2dL + L + 1) + 1.
std::size_t param_count(const GnnSpec& s);
std::size_t param_count_uniform(std::size_t d, std::size_t L);

// Largest encoded parameter size over weights, biases and activation constants.
std::size_t spec_bitlength(const GnnSpec& s);

// Rewrites every aggregation matrix as a column concatenation of k summands
// of strictly smaller mantissa bit length followed by a 0/1 summing stage,
// yielding an equivalent spec (bit-exact on every graph) with 2L layers.
// k = 1 returns the spec unchanged. Fails when the weights' mantissas are
// already 1 bit or shorter, since no strictly smaller split exists.
GnnSpec expand_bitlength(const GnnSpec& s, std::size_t k);

}  // namespace wlvc
