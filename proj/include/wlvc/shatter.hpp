#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wlvc/dyadic.hpp"
#include "wlvc/graph.hpp"
#include "wlvc/wl.hpp"

namespace wlvc {

// One-hot readout over the color histograms of a fixed graph set: histogram
// -> digit string in base K (one digit per color slot) -> natural code, then
// per-member threshold pairs lsig(code - c_i + 1), lsig(c_i - code + 1),
// their AND, and a sign readout against a subset indicator. Every member
// maps to exactly one hot entry; any other graph maps to all zeros.
struct ShatterReadout {
  std::vector<Graph> members;
  bool use_labels = true;
  std::size_t requested_iters = 0;  // the L asked for
  std::size_t iters = 0;            // iteration actually read (stable cutoff)
  std::uint64_t base = 0;           // K, > every member order
  std::map<Color, std::size_t> slots;
  std::vector<bigint> codes;  // per member, pairwise distinct
};

// code = sum over bins of count * K^slot(color). Requires every color
// slotted and every count < K, which makes the encoding injective.
bigint encode_histogram(const Histogram& h, std::uint64_t K,
                        const std::map<Color, std::size_t>& slots);

// Shared-dictionary refinement over the members at L iterations; throws
// precondition_error naming the offending indistinguishable pair when two
// members share a histogram.
ShatterReadout build_histogram_shatter(const std::vector<Graph>& graphs, std::size_t L,
                                       std::size_t threads = 1, std::size_t max_members = 32);

// Re-refines members + g under the stored iteration count and returns the
// code of the member whose histogram g matches inside that shared run, or
// nullopt when g matches none of them.
std::optional<bigint> shatter_code(const ShatterReadout& r, const Graph& g,
                                   std::size_t threads = 1);

// 1 iff g's histogram class is in the subset; exact 0/1 via the staged
// lsig/sign arithmetic.
int shatter_eval(const ShatterReadout& r, std::uint64_t subset, const Graph& g,
                 std::size_t threads = 1);

// Exhaustively checks all 2^m subsets against all members; on failure the
// offending subset is written to *counterexample when given.
bool verify_shatter(const std::vector<Graph>& graphs, std::size_t L, std::size_t threads = 1,
                    std::uint64_t* counterexample = nullptr);

}  // namespace wlvc
