#pragma once

#include <cstdint>
#include <vector>

#include "wlvc/dyadic.hpp"

namespace wlvc {

// Continuous-domain piecewise polynomial. Piece i applies on
// [breaks[i-1], breaks[i]); piece 0 on (-inf, breaks[0]); the last piece on
// [breaks.back(), +inf). With no breaks there is a single piece on all of R.
// Coefficients are ascending: pieces[i] = {c0, c1, ...} meaning c0 + c1*x + ...
struct PiecewisePoly {
  std::vector<Dyadic> breaks;
  std::vector<DyVec> pieces;
};

void validate(const PiecewisePoly& f);  // throws precondition_error

Dyadic pw_eval(const PiecewisePoly& f, const Dyadic& x);

std::size_t piece_count(const PiecewisePoly& f);
std::size_t poly_degree(const PiecewisePoly& f);  // max degree over pieces
bool same_activation(const PiecewisePoly& a, const PiecewisePoly& b);
std::size_t activation_bits(const PiecewisePoly& f);  // max encoded_bits over params

PiecewisePoly act_identity();
PiecewisePoly act_constant(const Dyadic& c);
PiecewisePoly act_relu();
PiecewisePoly act_sign();  // 1 for x >= 0, else 0
PiecewisePoly act_lsig();  // clamp to [0, 1]

// The five-piece extraction activation: 0 below 0, ramps to 1 on [0, 1/2),
// plateau 1 on [1/2, 1), ramps back down on [1, 3/2), 0 from 3/2 on.
PiecewisePoly act_bump();
// act_bump with the argument divided by M; M must be a power of two so the
// slopes stay dyadic. M = 1 gives act_bump.
PiecewisePoly act_bump_scaled(std::uint64_t m);

}  // namespace wlvc
