#include "wlvc/activation.hpp"

#include <algorithm>

#include "wlvc/errors.hpp"

namespace wlvc {

void validate(const PiecewisePoly& f) {
  if (f.pieces.empty()) throw precondition_error("activation: no pieces");
  if (f.pieces.size() != f.breaks.size() + 1)
    throw precondition_error("activation: piece/break count mismatch");
  for (std::size_t i = 0; i + 1 < f.breaks.size(); ++i)
    if (!(f.breaks[i] < f.breaks[i + 1]))
      throw precondition_error("activation: breakpoints not strictly increasing");
  for (const auto& p : f.pieces)
    if (p.empty()) throw precondition_error("activation: empty coefficient list");
}

Dyadic pw_eval(const PiecewisePoly& f, const Dyadic& x) {
  const std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(f.breaks.begin(), f.breaks.end(), x) - f.breaks.begin());
  const DyVec& c = f.pieces[idx];
  Dyadic acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::size_t piece_count(const PiecewisePoly& f) { return f.pieces.size(); }

std::size_t poly_degree(const PiecewisePoly& f) {
  std::size_t d = 0;
  for (const auto& p : f.pieces) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!p[i].is_zero()) last = i;
    d = std::max(d, last);
  }
  return d;
}

bool same_activation(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (a.breaks != b.breaks || a.pieces.size() != b.pieces.size()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const std::size_t n = std::max(a.pieces[i].size(), b.pieces[i].size());
    for (std::size_t j = 0; j < n; ++j) {
      const Dyadic ca = j < a.pieces[i].size() ? a.pieces[i][j] : Dyadic();
      const Dyadic cb = j < b.pieces[i].size() ? b.pieces[i][j] : Dyadic();
      if (ca != cb) return false;
    }
  }
  return true;
}

std::size_t activation_bits(const PiecewisePoly& f) {
  std::size_t bits = 0;
  for (const auto& b : f.breaks) bits = std::max(bits, encoded_bits(b));
  for (const auto& p : f.pieces)
    for (const auto& c : p) bits = std::max(bits, encoded_bits(c));
  return bits;
}

PiecewisePoly act_identity() { return {{}, {{Dyadic(0), Dyadic(1)}}}; }

PiecewisePoly act_constant(const Dyadic& c) { return {{}, {{c}}}; }

PiecewisePoly act_relu() { return {{Dyadic(0)}, {{Dyadic(0)}, {Dyadic(0), Dyadic(1)}}}; }

PiecewisePoly act_sign() { return {{Dyadic(0)}, {{Dyadic(0)}, {Dyadic(1)}}}; }

PiecewisePoly act_lsig() {
  return {{Dyadic(0), Dyadic(1)}, {{Dyadic(0)}, {Dyadic(0), Dyadic(1)}, {Dyadic(1)}}};
}

PiecewisePoly act_bump() { return act_bump_scaled(1); }

PiecewisePoly act_bump_scaled(std::uint64_t m) {
  if (m == 0) throw precondition_error("act_bump_scaled: scale must be positive");
  if ((m & (m - 1)) != 0)
    throw precondition_error("act_bump_scaled: scale must be a power of two, got " + std::to_string(m));
  const Dyadic M(static_cast<long long>(m));
  const Dyadic half = M.scale_pow2(-1);
  const Dyadic slope = Dyadic(2) * Dyadic(bigint(1), -static_cast<long long>(M.exponent()));
  return {{Dyadic(0), half, M, M + half},
          {{Dyadic(0)},
           {Dyadic(0), slope},
           {Dyadic(1)},
           {Dyadic(3), -slope},
           {Dyadic(0)}}};
}

}  // namespace wlvc
