#include "wlvc/shatter.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "wlvc/activation.hpp"
#include "wlvc/errors.hpp"

namespace wlvc {

namespace {

bigint pow_uint(std::uint64_t base, std::size_t e) {
  bigint r = 1, b = base;
  for (; e; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}

// The subset readout on a known code: threshold pair per member, AND, then
// sign of the selected sum minus one.
int staged_readout(const std::vector<bigint>& codes, std::uint64_t subset, const bigint& code) {
  const PiecewisePoly lsig = act_lsig(), sgn = act_sign();
  const Dyadic col(code, 0), one(1);
  Dyadic sum;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const Dyadic ci(codes[i], 0);
    const Dyadic alpha = pw_eval(lsig, col - ci + one);
    const Dyadic beta = pw_eval(lsig, ci - col + one);
    const Dyadic hot = pw_eval(lsig, alpha + beta - one);
    if ((subset >> i) & 1) sum += hot;
  }
  const Dyadic out = pw_eval(sgn, sum - one);
  return out.is_zero() ? 0 : 1;
}

std::vector<Histogram> member_histograms(const std::vector<Graph>& gs, std::size_t iters,
                                         bool use_labels, bool stop_when_stable,
                                         std::size_t threads, std::size_t* iter_read) {
  WlOptions opts;
  opts.max_iters = iters;
  opts.stop_when_stable = stop_when_stable;
  opts.use_labels = use_labels;
  opts.threads = threads;
  const WlRun run = wl1_refine(gs, opts);
  const std::size_t t = stop_when_stable ? run.effective_iter(iters) : iters;
  if (t >= run.iters.size()) throw internal_error("shatter: refinement run too short");
  if (iter_read) *iter_read = t;
  std::vector<Histogram> hs;
  hs.reserve(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) hs.push_back(histogram(run.iters[t][i]));
  return hs;
}

}  // namespace

bigint encode_histogram(const Histogram& h, std::uint64_t K,
                        const std::map<Color, std::size_t>& slots) {
  if (K < 2) throw precondition_error("encode_histogram: base must be at least 2");
  bigint code = 0;
  for (const auto& [color, count] : h.bins) {
    const auto it = slots.find(color);
    if (it == slots.end())
      throw precondition_error("encode_histogram: color " + std::to_string(color) +
                               " has no slot");
    if (count >= K)
      throw precondition_error("encode_histogram: count " + std::to_string(count) +
                               " reaches base " + std::to_string(K) + ", encoding not injective");
    code += bigint(count) * pow_uint(K, it->second);
  }
  return code;
}

ShatterReadout build_histogram_shatter(const std::vector<Graph>& graphs, std::size_t L,
                                       std::size_t threads, std::size_t max_members) {
  if (graphs.empty()) throw precondition_error("build_histogram_shatter: empty graph set");
  if (max_members > 63) throw precondition_error("build_histogram_shatter: budget above 63");
  if (graphs.size() > max_members)
    throw precondition_error("build_histogram_shatter: " + std::to_string(graphs.size()) +
                             " graphs exceed the budget of " + std::to_string(max_members));
  std::uint64_t max_order = 0;
  for (const Graph& g : graphs) {
    if (g.n == 0) throw precondition_error("build_histogram_shatter: empty member graph");
    max_order = std::max<std::uint64_t>(max_order, g.n);
  }

  ShatterReadout r;
  r.members = graphs;
  r.use_labels = true;
  r.requested_iters = L;
  const std::vector<Histogram> hs =
      member_histograms(graphs, L, r.use_labels, true, threads, &r.iters);

  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      if (hs[i] == hs[j])
        throw precondition_error("build_histogram_shatter: indistinguishable pair (" +
                                 std::to_string(i) + ", " + std::to_string(j) + ") at iteration " +
                                 std::to_string(r.iters));

  std::set<Color> colors;
  for (const Histogram& h : hs)
    for (const auto& [color, count] : h.bins) {
      (void)count;
      colors.insert(color);
    }
  std::size_t slot = 0;
  for (Color c : colors) r.slots.emplace(c, slot++);
  r.base = max_order + 1;

  for (const Histogram& h : hs) r.codes.push_back(encode_histogram(h, r.base, r.slots));
  for (std::size_t i = 0; i < r.codes.size(); ++i)
    for (std::size_t j = i + 1; j < r.codes.size(); ++j)
      if (r.codes[i] == r.codes[j])
        throw internal_error("build_histogram_shatter: distinct histograms collided");
  return r;
}

std::optional<bigint> shatter_code(const ShatterReadout& r, const Graph& g, std::size_t threads) {
  std::vector<Graph> gs = r.members;
  gs.push_back(g);
  const std::vector<Histogram> hs =
      member_histograms(gs, r.iters, r.use_labels, false, threads, nullptr);
  // color ids are only comparable within a single run (a fresh graph can shift
  // the numbering), so classify by histogram equality inside this run: that is
  // exactly iteration-r.iters indistinguishability from a member
  const Histogram& hq = hs.back();
  for (std::size_t i = 0; i < r.members.size(); ++i)
    if (hs[i] == hq) return r.codes[i];
  return std::nullopt;
}

int shatter_eval(const ShatterReadout& r, std::uint64_t subset, const Graph& g,
                 std::size_t threads) {
  if (r.members.size() < 64 && subset >> r.members.size())
    throw precondition_error("shatter_eval: subset mask has bits beyond the member count");
  const std::optional<bigint> code = shatter_code(r, g, threads);
  // any code no member carries lights no hot entry; zero is one such code
  return staged_readout(r.codes, subset, code ? *code : bigint(0));
}

bool verify_shatter(const std::vector<Graph>& graphs, std::size_t L, std::size_t threads,
                    std::uint64_t* counterexample) {
  if (graphs.size() > 16) throw precondition_error("verify_shatter: more than 16 members");
  if (graphs.empty()) return true;
  const ShatterReadout r = build_histogram_shatter(graphs, L, threads);
  std::vector<bigint> codes;
  codes.reserve(graphs.size());
  for (const Graph& g : graphs) {
    const std::optional<bigint> c = shatter_code(r, g, threads);
    if (!c) throw internal_error("verify_shatter: member failed to classify");
    codes.push_back(*c);
  }
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << graphs.size()); ++subset)
    for (std::size_t i = 0; i < graphs.size(); ++i)
      if (staged_readout(r.codes, subset, codes[i]) != static_cast<int>((subset >> i) & 1)) {
        if (counterexample) *counterexample = subset;
        return false;
      }
  return true;
}

}  // namespace wlvc
