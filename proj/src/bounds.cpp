#include "wlvc/bounds.hpp"

#include <cmath>
#include <string>

#include "wlvc/errors.hpp"
#include "wlvc/gnn.hpp"

namespace wlvc {

namespace {

const bfloat kE = exp(bfloat(1));
const bfloat kLn2 = log(bfloat(2));

bfloat lg2(const bfloat& x) { return log(x) / kLn2; }

// no applicability window; k_bound flags that separately
bfloat lemma17_raw(const bfloat& r, const bfloat& degree, const bfloat& vars) {
  if (degree == 0) return bfloat(1);
  return 1 + vars * lg2(2 * kE * degree * r / vars);
}

bfloat powu(std::uint64_t base, std::uint64_t e) {
  bfloat r = 1, b = base;
  for (; e; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}

bool sat(std::uint64_t m, const BoundParams& b) {
  return bfloat(m) <= k_bound(m, b).log2_rhs;
}

}  // namespace

void validate(const BoundParams& b) {
  if (b.d < 1 || b.L < 1 || b.p < 1 || b.u < 1)
    throw precondition_error("bounds: d, L, p, u must all be positive");
  const std::uint64_t cap = 1u << 20;
  if (b.d > cap || b.L > cap || b.p > cap || b.u > cap || b.delta > cap)
    throw precondition_error("bounds: parameter above 2^20");
}

bfloat lemma17_bound(std::uint64_t r, std::uint64_t degree, std::uint64_t vars) {
  if (vars < 1) throw precondition_error("lemma17_bound: vars must be positive");
  if (vars > r)
    throw precondition_error("lemma17_bound: vars = " + std::to_string(vars) +
                             " exceeds r = " + std::to_string(r));
  return lemma17_raw(bfloat(r), bfloat(degree), bfloat(vars));
}

std::uint64_t side_condition_floor(const BoundParams& b) {
  validate(b);
  return b.delta > 0 ? param_count_uniform(b.d, b.L) : 2 * b.d + 1;
}

KBound k_bound(std::uint64_t m, const BoundParams& b) {
  validate(b);
  if (m < 1) throw precondition_error("k_bound: m must be positive");
  const bfloat d(b.d), u(b.u), p(b.p), mm(m);
  KBound out;
  if (b.delta == 0) {
    out.side_ok = 2 * b.d + 1 <= m;
    const bfloat per = lemma17_raw(d * mm, u * p, (2 * d + 1) * d);
    const bfloat fin = lemma17_raw(mm, bfloat(1), d + 1);
    out.log2_rhs = bfloat(b.L) * per + fin;
    return out;
  }
  const std::uint64_t P = param_count_uniform(b.d, b.L);
  out.side_ok = P <= m;
  bfloat total = 0;
  for (std::uint64_t t = 1; t <= b.L; ++t) {
    const bfloat degree = u * p * (1 + bfloat(t - 1) * powu(b.delta, t - 1));
    total += lemma17_raw(d * mm, degree, (2 * d + 1) * d * bfloat(t));
  }
  total += lemma17_raw(mm, 1 + bfloat(b.L) * powu(b.delta, b.L), bfloat(P));
  out.log2_rhs = total;
  return out;
}

VcUpper vc_upper(const BoundParams& b) {
  const std::uint64_t floor_m = side_condition_floor(b);
  if (!sat(floor_m, b)) return {floor_m, false, floor_m};
  std::uint64_t lo = floor_m, step = 1, hi;
  for (;;) {
    hi = lo + step;
    if (!sat(hi, b)) break;
    lo = hi;
    step *= 2;
    if (step > (std::uint64_t{1} << 42))
      throw internal_error("vc_upper: bound never closed while doubling");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (sat(mid, b) ? lo : hi) = mid;
  }
  return {lo, true, floor_m};
}

VcUpper vc_upper_scan(const BoundParams& b, std::uint64_t cap) {
  const std::uint64_t floor_m = side_condition_floor(b);
  if (!sat(floor_m, b)) return {floor_m, false, floor_m};
  std::uint64_t m = floor_m;
  while (m + 1 <= cap && sat(m + 1, b)) ++m;
  if (m + 1 > cap)
    throw precondition_error("vc_upper_scan: cap of " + std::to_string(cap) +
                             " reached before the bound closed");
  return {m, true, floor_m};
}

std::uint64_t sample_complexity(double epsilon, double delta_conf, std::uint64_t vcdim) {
  if (!(epsilon > 0)) throw precondition_error("sample_complexity: epsilon must be positive");
  if (!(delta_conf > 0 && delta_conf < 1))
    throw precondition_error("sample_complexity: confidence must lie in (0, 1)");
  if (vcdim < 1) throw precondition_error("sample_complexity: vcdim must be positive");
  const double d = static_cast<double>(vcdim);
  const double v =
      std::ceil((1.0 / (epsilon * epsilon)) * (d * std::log(d / epsilon) + std::log(1.0 / delta_conf + 1.0)));
  if (!std::isfinite(v) || v >= 9.2e18)
    throw precondition_error("sample_complexity: value out of range");
  return v < 0 ? 0 : static_cast<std::uint64_t>(v);
}

RegimeAnswer regime(const RegimeQuery& q) {
  if (!q.uniform) return {"non_uniform", "= m_{n,d,L}"};
  if (q.bitlength) return {"bitlength", "= " + std::to_string(*q.bitlength)};
  if (q.color_bound) return {"color_complexity", "≈ poly(d,L)·log(u)"};
  return {"infinite", "∞"};
}

std::string asymptotic_class(std::uint64_t delta) {
  if (delta == 0) return "O(P log(puP))";
  if (delta == 1) return "O(LP log(puP))";
  return "O(LP log(puP) + L^2 P log(delta))";
}

}  // namespace wlvc
