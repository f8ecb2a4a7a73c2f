#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlvc/dyadic.hpp"
#include "wlvc/gnn.hpp"
#include "wlvc/graph.hpp"

namespace wlvc {

using BitVector = std::vector<std::uint8_t>;  // entries 0/1, n >= 1

// rho(x) = sum_i (2^{1-2i} + x_i 2^{-2i}), the binary value 0.1x_1 1x_2 ...;
// always in [1/2, 1].
Dyadic rho(const BitVector& x);
// rho of x shifted left by k and zero-padded back to length n, 1 <= k <= n.
Dyadic rho_shift(const BitVector& x, std::size_t k);

// Everything the bit-extraction argument manipulates, for one x: the shift
// values rho_k, the per-position constants a_k, the prefix codes b_k and
// c_k = b_k + a_k + 1, and the full code sets C_k. All defining identities
// and separation/range bounds are checked eagerly at construction; a
// violation is an implementation bug and throws internal_error.
struct ExtractionLedger {
  std::size_t n = 0;
  BitVector x;
  Dyadic rho_x;
  std::vector<Dyadic> rho_k, a, b, c;      // index k-1, k = 1..n
  std::vector<std::vector<Dyadic>> codes;  // C_k, sorted ascending
  std::uint64_t scale = 0;                 // M = 4^n
};

ExtractionLedger ledger(const BitVector& x);

// C_k over all prefixes in {0,1}^{k-1}; |C_k| = 2^{k-1}, sorted.
std::vector<Dyadic> code_set(std::size_t k, std::size_t n);

// The two-layer width 1->2->1 spec whose readout on the scaled forest of
// position k recovers bit x_k: layer 1 stores (rho * deg(v) - rho, deg(v) - 1)
// via the neighbor sum, layer 2 feeds their difference through the scaled
// bump. scale = 1 is the unscaled construction.
GnnSpec build_extraction_gnn(const BitVector& x, std::uint64_t scale);

// One tree per code c in C_k: root with scale*4^k leaf children plus one
// child s_c, which has scale*c leaf children. Uniform vertex labels.
struct ExtractionForest {
  Graph graph;
  std::vector<std::uint8_t> role;  // 0 root, 1 s, 2 root-leaf, 3 s-leaf
  std::vector<std::uint32_t> comp;
  std::vector<Dyadic> comp_code;   // per component, ascending
  std::size_t k = 0, n = 0;
  std::uint64_t scale = 0;
};

// scale*c must be integral for every c in C_k (scale = 4^n always works);
// the offending code is reported otherwise.
ExtractionForest gen_extraction_forest(std::size_t k, std::size_t n, std::uint64_t scale);

struct ExtractionReport {
  std::size_t n = 0;
  std::uint64_t scale = 0;
  std::size_t checks = 0;
  bool ok = true;
  std::vector<std::string> failures;
};

// For every x in {0,1}^n and k in [n], evaluates the spec for x on the
// forest for k (via the stable quotient, plus directly on small forests) and
// checks the readout equals x_k exactly, every non-root vertex value is 0
// after layer 2, and the only root that may fire is the one coded c_k(x).
// scale = 0 picks 4^n. Guarded by a budget since forests grow as 16^n.
ExtractionReport verify_bit_extraction(std::size_t n, std::uint64_t scale = 0,
                                       std::size_t threads = 1, std::size_t budget = 4);

}  // namespace wlvc
