#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace wlvc {

// All bound arithmetic runs in log2 space at quad precision; the solver
// compares integers against these logs, so precision only touches ties.
using bfloat = boost::multiprecision::cpp_bin_float_quad;

struct BoundParams {
  std::uint64_t d = 1, L = 1;  // width, layers
  std::uint64_t p = 1;         // activation pieces
  std::uint64_t delta = 0;     // activation degree
  std::uint64_t u = 1;         // color-complexity bound
};

void validate(const BoundParams& b);

// log2 of the sign-pattern count 2(2e*r*degree/vars)^vars for r polynomials
// of the given degree in vars variables; degree 0 degenerates to 2.
bfloat lemma17_bound(std::uint64_t r, std::uint64_t degree, std::uint64_t vars);

// log2 of the growth-function bound at m graphs. side_ok reports the side
// condition making the bound applicable (2d+1 <= m for degree 0, P <= m
// otherwise); the value is computed either way.
struct KBound {
  bfloat log2_rhs;
  bool side_ok = false;
};
KBound k_bound(std::uint64_t m, const BoundParams& b);

// Smallest m the side condition admits: P when delta > 0, else 2d+1.
std::uint64_t side_condition_floor(const BoundParams& b);

struct VcUpper {
  std::uint64_t m_star = 0;
  bool satisfied = false;  // false: even the floor fails, m_star = floor
  std::uint64_t floor_m = 0;
};

// Largest m >= floor with m <= log2 of the bound, by doubling then binary
// search (the crossover is unique past the floor: the bound is polylog in m).
VcUpper vc_upper(const BoundParams& b);
// Linear-scan reference for cross-checking the solver on small cases.
VcUpper vc_upper_scan(const BoundParams& b, std::uint64_t cap = 1u << 20);

// ceil((1/eps^2)(d ln(d/eps) + ln(1/conf + 1))) with the big-O constant
// fixed to 1; a heuristic, not a guarantee.
std::uint64_t sample_complexity(double epsilon, double delta_conf, std::uint64_t vcdim);

// The bounded-width VC regime map: non-uniform is finite via histogram
// counting; uniform with a bitlength bound is exactly that bitlength;
// uniform with only a color bound is polylogarithmic in it; otherwise
// unbounded. A bitlength bound beats a color bound when both are present.
struct RegimeQuery {
  bool uniform = true;
  std::optional<std::uint64_t> bitlength;
  std::optional<std::uint64_t> color_bound;
};
struct RegimeAnswer {
  std::string name;   // non_uniform | bitlength | color_complexity | infinite
  std::string bound;  // display form
};
RegimeAnswer regime(const RegimeQuery& q);

// Growth class of the VC upper bound as a function of the parameters, split
// by activation degree.
std::string asymptotic_class(std::uint64_t delta);

}  // namespace wlvc
