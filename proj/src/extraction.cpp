#include "wlvc/extraction.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "wlvc/activation.hpp"
#include "wlvc/errors.hpp"
#include "wlvc/parallel.hpp"
#include "wlvc/quotient.hpp"
#include "wlvc/wl.hpp"

namespace wlvc {

namespace {

constexpr std::size_t kMaxN = 16;           // code sets grow as 2^{k-1}
constexpr std::uint64_t kMaxForest = 1u << 24;  // vertex budget

void check_bits(const BitVector& x) {
  if (x.empty()) throw precondition_error("extraction: empty bit vector");
  if (x.size() > kMaxN)
    throw precondition_error("extraction: n > " + std::to_string(kMaxN) + " unsupported");
  for (std::uint8_t b : x)
    if (b > 1) throw precondition_error("extraction: bit vector entries must be 0 or 1");
}

// (4^k - 1) / 3, the repunit of base 4.
bigint quarter_repunit(std::size_t k) { return ((bigint(1) << (2 * k)) - 1) / 3; }

Dyadic a_k(std::size_t k, std::size_t n) {
  // 2N - N*2^{1-2n} with N = (4^k - 1)/3; the subtrahend is the fractional
  // tail that keeps c_k below the next code.
  const Dyadic N(quarter_repunit(k), 0);
  return N * (Dyadic(2) - Dyadic::pow2(1 - 2 * static_cast<long long>(n)));
}

bigint b_k_int(const BitVector& x, std::size_t k) {
  bigint b = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (x[i - 1]) b += bigint(1) << (2 * (k - i));
  return b;
}

Dyadic c_k(const BitVector& x, std::size_t k, std::size_t n) {
  return Dyadic(b_k_int(x, k), 0) + a_k(k, n) + Dyadic(1);
}

[[noreturn]] void ledger_bug(const std::string& what, std::size_t k) {
  throw internal_error("ledger: " + what + " at k = " + std::to_string(k));
}

}  // namespace

Dyadic rho(const BitVector& x) {
  check_bits(x);
  Dyadic r;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    r += Dyadic::pow2(1 - 2 * static_cast<long long>(i));
    if (x[i - 1]) r += Dyadic::pow2(-2 * static_cast<long long>(i));
  }
  return r;
}

Dyadic rho_shift(const BitVector& x, std::size_t k) {
  check_bits(x);
  if (k < 1 || k > x.size())
    throw precondition_error("rho_shift: k = " + std::to_string(k) + " outside [1, n]");
  BitVector shifted(x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
  shifted.resize(x.size(), 0);
  return rho(shifted);
}

std::vector<Dyadic> code_set(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) throw precondition_error("code_set: k outside [1, n]");
  if (n > kMaxN) throw precondition_error("code_set: n > " + std::to_string(kMaxN));
  const Dyadic base = a_k(k, n) + Dyadic(1);
  std::vector<Dyadic> codes;
  codes.reserve(std::size_t{1} << (k - 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    bigint b = 0;
    for (std::size_t i = 1; i < k; ++i)
      if ((mask >> (i - 1)) & 1) b += bigint(1) << (2 * (k - i));
    codes.push_back(Dyadic(std::move(b), 0) + base);
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

ExtractionLedger ledger(const BitVector& x) {
  check_bits(x);
  const std::size_t n = x.size();
  ExtractionLedger led;
  led.n = n;
  led.x = x;
  led.rho_x = rho(x);
  led.scale = std::uint64_t{1} << (2 * n);

  const Dyadic half = Dyadic::pow2(-1);
  const Dyadic one(1);
  const PiecewisePoly bump = act_bump();
  const Dyadic M(bigint(led.scale), 0);

  if (led.rho_x < half || led.rho_x > one) ledger_bug("rho outside [1/2, 1]", 0);

  for (std::size_t k = 1; k <= n; ++k) {
    led.rho_k.push_back(rho_shift(x, k));
    led.a.push_back(a_k(k, n));
    led.b.push_back(Dyadic(b_k_int(x, k), 0));
    led.c.push_back(c_k(x, k, n));
    led.codes.push_back(code_set(k, n));

    const Dyadic& rk = led.rho_k.back();
    const Dyadic& a = led.a.back();
    const Dyadic& b = led.b.back();
    const Dyadic& c = led.c.back();
    const Dyadic xk(x[k - 1]);
    const Dyadic scaled = Dyadic::pow2(2 * static_cast<long long>(k)) * led.rho_x;

    if (rk < half || rk > one) ledger_bug("shifted rho outside [1/2, 1]", k);
    if (rk != scaled - a - b - xk) ledger_bug("shift identity broken", k);
    if (scaled - c < xk - half || scaled - c > xk) ledger_bug("sandwich bound broken", k);
    if (pw_eval(bump, scaled - c) != xk) ledger_bug("bump readback wrong on own code", k);

    const bigint twoN = 2 * quarter_repunit(k);
    const Dyadic lo(twoN, 0);
    const Dyadic hi((bigint(1) << (2 * k)) - 1, 0);
    if (a <= lo - one || a > lo) ledger_bug("a outside its unit window", k);

    const auto& codes = led.codes.back();
    if (codes.size() != (std::size_t{1} << (k - 1))) ledger_bug("code set size wrong", k);
    for (std::size_t i = 0; i < codes.size(); ++i) {
      if (codes[i] < lo || codes[i] > hi) ledger_bug("code outside its range", k);
      if (i > 0 && codes[i] - codes[i - 1] < Dyadic(4)) ledger_bug("code separation below 4", k);
      if (!(M * codes[i]).is_integer()) ledger_bug("scaled code not integral", k);
      if (codes[i] != c && !pw_eval(bump, scaled - codes[i]).is_zero())
        ledger_bug("bump fires on a foreign code", k);
    }
    if (std::find(codes.begin(), codes.end(), c) == codes.end())
      ledger_bug("own code missing from code set", k);
  }
  return led;
}

GnnSpec build_extraction_gnn(const BitVector& x, std::uint64_t scale) {
  check_bits(x);
  if (scale == 0) throw precondition_error("build_extraction_gnn: zero scale");
  const Dyadic r = rho(x);
  GnnSpec s;
  s.input = InputKind::constant;
  s.input_width = 1;
  s.constant_row = {Dyadic(1)};

  GnnLayer l1;
  l1.w1 = {{Dyadic(0), Dyadic(0)}};
  l1.w2 = {{r, Dyadic(1)}};
  l1.b = {-r, Dyadic(-1)};
  l1.act = act_identity();

  GnnLayer l2;
  l2.w1 = {{Dyadic(1)}, {Dyadic(0)}};
  l2.w2 = {{Dyadic(0)}, {Dyadic(-1)}};
  l2.b = {Dyadic(0)};
  l2.act = act_bump_scaled(scale);

  s.layers = {std::move(l1), std::move(l2)};
  s.readout.w = {Dyadic(1)};
  s.readout.b = Dyadic(0);
  s.readout.act = act_identity();
  validate(s);
  return s;
}

ExtractionForest gen_extraction_forest(std::size_t k, std::size_t n, std::uint64_t scale) {
  if (k < 1 || k > n) throw precondition_error("gen_extraction_forest: k outside [1, n]");
  if (scale == 0) throw precondition_error("gen_extraction_forest: zero scale");
  const std::vector<Dyadic> codes = code_set(k, n);
  const Dyadic M(bigint(scale), 0);

  if (2 * k >= 63 || scale > (kMaxForest >> (2 * k)))
    throw precondition_error("gen_extraction_forest: forest exceeds the vertex budget");
  const std::uint64_t t_cnt = scale << (2 * k);

  std::vector<std::uint64_t> u_cnt;
  std::uint64_t total = 0;
  for (const Dyadic& c : codes) {
    const Dyadic mc = M * c;
    if (!mc.is_integer())
      throw precondition_error("gen_extraction_forest: scale * c is not integral for c = " +
                               c.str());
    const bigint cnt = mc.to_integer();
    if (cnt > kMaxForest)
      throw precondition_error("gen_extraction_forest: forest exceeds the vertex budget");
    u_cnt.push_back(cnt.convert_to<std::uint64_t>());
    total += 2 + t_cnt + u_cnt.back();
    if (total > kMaxForest)
      throw precondition_error("gen_extraction_forest: forest exceeds the vertex budget");
  }

  ExtractionForest f;
  f.k = k;
  f.n = n;
  f.scale = scale;
  f.comp_code = codes;
  Graph& g = f.graph;
  g.n = static_cast<Vertex>(total);
  g.adj.resize(g.n);
  g.labels.assign(g.n, 0);
  f.role.resize(g.n);
  f.comp.resize(g.n);

  Vertex base = 0;
  for (std::size_t ci = 0; ci < codes.size(); ++ci) {
    const Vertex root = base, s = base + 1;
    const Vertex t0 = base + 2;
    const Vertex u0 = t0 + static_cast<Vertex>(t_cnt);
    const Vertex end = u0 + static_cast<Vertex>(u_cnt[ci]);

    auto& ra = g.adj[root];
    ra.reserve(t_cnt + 1);
    ra.push_back(s);
    for (Vertex t = t0; t < u0; ++t) {
      ra.push_back(t);
      g.adj[t] = {root};
    }
    auto& sa = g.adj[s];
    sa.reserve(u_cnt[ci] + 1);
    sa.push_back(root);
    for (Vertex u = u0; u < end; ++u) {
      sa.push_back(u);
      g.adj[u] = {s};
    }

    f.role[root] = 0;
    f.role[s] = 1;
    std::fill(f.role.begin() + t0, f.role.begin() + u0, std::uint8_t{2});
    std::fill(f.role.begin() + u0, f.role.begin() + end, std::uint8_t{3});
    std::fill(f.comp.begin() + base, f.comp.begin() + end, static_cast<std::uint32_t>(ci));
    base = end;
  }
  validate(g);
  return f;
}

ExtractionReport verify_bit_extraction(std::size_t n, std::uint64_t scale, std::size_t threads,
                                       std::size_t budget) {
  if (n < 1) throw precondition_error("verify_bit_extraction: n must be positive");
  if (n > budget)
    throw precondition_error("verify_bit_extraction: n = " + std::to_string(n) +
                             " exceeds the budget of " + std::to_string(budget));
  if (scale == 0) scale = std::uint64_t{1} << (2 * n);

  ExtractionReport rep;
  rep.n = n;
  rep.scale = scale;
  std::mutex mu;

  const auto fail = [&](const std::string& what) {
    std::lock_guard<std::mutex> lock(mu);
    rep.ok = false;
    rep.failures.push_back(what);
  };

  const std::uint64_t nx = std::uint64_t{1} << n;
  std::vector<std::size_t> checks_per_k(n, 0);

  for (std::size_t k = 1; k <= n; ++k) {
    const ExtractionForest f = gen_extraction_forest(k, n, scale);
    const auto [stable, iters] = stable_coloring(f.graph, threads);
    (void)iters;
    const QuotientGraph q = reduce(f.graph, stable);

    // the quotient must not merge across roles or components
    for (Vertex v = 0; v < f.graph.n; ++v) {
      const Vertex r = q.rep[q.class_of[v]];
      if (f.role[r] != f.role[v] || f.comp[r] != f.comp[v]) {
        fail("k=" + std::to_string(k) + ": stable class of vertex " + std::to_string(v) +
             " mixes roles");
        break;
      }
    }

    std::size_t local_checks = 0;
    std::mutex cmu;
    parallel_for(nx, threads, [&](std::size_t mb, std::size_t me) {
      std::size_t my_checks = 0;
      for (std::size_t mask = mb; mask < me; ++mask) {
        BitVector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
        const Dyadic ck = c_k(x, k, n);
        const Dyadic xk(x[k - 1]);
        const GnnSpec spec = build_extraction_gnn(x, scale);
        const QuotientTrace tr = eval_on_quotient_trace(spec, q, f.graph);

        const std::string tag = "x=" + std::to_string(mask) + ",k=" + std::to_string(k);
        for (std::uint32_t X = 0; X < q.k; ++X) {
          const Vertex r = q.rep[X];
          const Dyadic& h = tr.h[2][X][0];
          const Dyadic want =
              f.role[r] == 0 ? (f.comp_code[f.comp[r]] == ck ? xk : Dyadic(0)) : Dyadic(0);
          if (h != want)
            fail(tag + ": node " + std::to_string(r) + " carries " + h.str() + ", expected " +
                 want.str());
          ++my_checks;
        }
        if (tr.out != xk)
          fail(tag + ": readout " + tr.out.str() + ", expected " + xk.str());
        ++my_checks;

        if (f.graph.n <= 5000) {
          if (gnn_eval(spec, f.graph) != xk) fail(tag + ": direct evaluation disagrees");
          ++my_checks;
        }
      }
      std::lock_guard<std::mutex> lock(cmu);
      local_checks += my_checks;
    });
    checks_per_k[k - 1] = local_checks;
  }
  for (std::size_t c : checks_per_k) rep.checks += c;
  return rep;
}

}  // namespace wlvc
