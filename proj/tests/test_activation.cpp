#include <doctest.h>

#include "testutil.hpp"
#include "wlvc/activation.hpp"
#include "wlvc/errors.hpp"

using namespace wlvc;

namespace {

Dyadic frac(long long num, long long den_pow2) { return Dyadic(bigint(num), -den_pow2); }

}  // namespace

TEST_SUITE("activation") {

TEST_CASE("identity, constant, relu") {
  CHECK(pw_eval(act_identity(), Dyadic(-7)) == Dyadic(-7));
  CHECK(pw_eval(act_constant(Dyadic(3)), Dyadic(100)) == Dyadic(3));
  CHECK(pw_eval(act_relu(), Dyadic(-2)) == Dyadic(0));
  CHECK(pw_eval(act_relu(), Dyadic(2)) == Dyadic(2));
  CHECK(pw_eval(act_relu(), Dyadic(0)) == Dyadic(0));
}

TEST_CASE("sign steps at zero, closed on the right") {
  CHECK(pw_eval(act_sign(), Dyadic(0)) == Dyadic(1));
  CHECK(pw_eval(act_sign(), frac(-1, 20)) == Dyadic(0));
  CHECK(pw_eval(act_sign(), frac(1, 20)) == Dyadic(1));
}

TEST_CASE("lsig clamps to the unit interval") {
  CHECK(pw_eval(act_lsig(), Dyadic(-3)) == Dyadic(0));
  CHECK(pw_eval(act_lsig(), Dyadic(0)) == Dyadic(0));
  CHECK(pw_eval(act_lsig(), frac(1, 2)) == frac(1, 2));
  CHECK(pw_eval(act_lsig(), Dyadic(1)) == Dyadic(1));
  CHECK(pw_eval(act_lsig(), Dyadic(9)) == Dyadic(1));
}

TEST_CASE("bump hits the worked values") {
  const PiecewisePoly a = act_bump();
  CHECK(pw_eval(a, Dyadic(-1)) == Dyadic(0));
  CHECK(pw_eval(a, Dyadic(0)) == Dyadic(0));
  CHECK(pw_eval(a, frac(1, 2)) == frac(1, 1));   // A(1/4) = 1/2
  CHECK(pw_eval(a, frac(5, 3)) == Dyadic(1));    // A(5/8) = 1
  CHECK(pw_eval(a, frac(1, 1)) == Dyadic(1));    // plateau start
  CHECK(pw_eval(a, Dyadic(1)) == Dyadic(1));
  CHECK(pw_eval(a, frac(5, 2)) == frac(1, 1));   // A(5/4) = 1/2
  CHECK(pw_eval(a, frac(3, 1)) == Dyadic(0));    // A(3/2) = 0
  CHECK(pw_eval(a, Dyadic(2)) == Dyadic(0));
  CHECK(piece_count(a) == 5);
  CHECK(poly_degree(a) == 1);
}

TEST_CASE("scaled bump divides the argument by M") {
  const PiecewisePoly a4 = act_bump_scaled(4);
  const PiecewisePoly a = act_bump();
  for (long long num : {-8, 0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 24}) {
    const Dyadic x(bigint(num), -1);  // x = num/2
    CHECK(pw_eval(a4, x) == pw_eval(a, x * frac(1, 2)));
  }
  CHECK(pw_eval(a4, Dyadic(2)) == Dyadic(1));  // A(1/2)
  CHECK(same_activation(act_bump_scaled(1), act_bump()));
  CHECK_THROWS_AS(act_bump_scaled(0), precondition_error);
  CHECK_THROWS_AS(act_bump_scaled(3), precondition_error);
  CHECK_THROWS_AS(act_bump_scaled(12), precondition_error);
}

TEST_CASE("pieces are left-closed, right-open") {
  PiecewisePoly f;
  f.breaks = {Dyadic(0), Dyadic(1)};
  f.pieces = {{Dyadic(10)}, {Dyadic(20)}, {Dyadic(30)}};
  validate(f);
  CHECK(pw_eval(f, frac(-1, 10)) == Dyadic(10));
  CHECK(pw_eval(f, Dyadic(0)) == Dyadic(20));
  CHECK(pw_eval(f, frac(1, 1)) == Dyadic(20));
  CHECK(pw_eval(f, Dyadic(1)) == Dyadic(30));
  CHECK(pw_eval(f, Dyadic(5)) == Dyadic(30));
}

TEST_CASE("polynomial pieces evaluate with ascending coefficients") {
  PiecewisePoly f;
  f.pieces = {{Dyadic(1), Dyadic(2), Dyadic(3)}};  // 1 + 2x + 3x^2
  validate(f);
  CHECK(pw_eval(f, Dyadic(2)) == Dyadic(1 + 4 + 12));
  CHECK(pw_eval(f, frac(1, 1)) == Dyadic(1) + Dyadic(1) + frac(3, 2));
  CHECK(poly_degree(f) == 2);
  CHECK(piece_count(f) == 1);
}

TEST_CASE("validate rejects inconsistent tables") {
  PiecewisePoly f;
  f.breaks = {Dyadic(1), Dyadic(0)};  // not increasing
  f.pieces = {{Dyadic(0)}, {Dyadic(0)}, {Dyadic(0)}};
  CHECK_THROWS_AS(validate(f), precondition_error);

  f.breaks = {Dyadic(0)};
  f.pieces = {{Dyadic(0)}};  // needs breaks + 1 pieces
  CHECK_THROWS_AS(validate(f), precondition_error);

  f.breaks = {Dyadic(0), Dyadic(0)};  // duplicate break
  f.pieces = {{Dyadic(0)}, {Dyadic(0)}, {Dyadic(0)}};
  CHECK_THROWS_AS(validate(f), precondition_error);

  f.breaks.clear();
  f.pieces.clear();  // no pieces at all
  CHECK_THROWS_AS(validate(f), precondition_error);
}

TEST_CASE("same_activation compares structurally") {
  CHECK(same_activation(act_relu(), act_relu()));
  CHECK_FALSE(same_activation(act_relu(), act_identity()));
  CHECK_FALSE(same_activation(act_bump_scaled(4), act_bump_scaled(8)));
}

TEST_CASE("activation_bits covers breaks and coefficients") {
  CHECK(activation_bits(act_identity()) <= activation_bits(act_bump()));
  PiecewisePoly f;
  f.pieces = {{Dyadic(bigint(0xFFFF), 0)}};
  CHECK(activation_bits(f) >= 16);
}

}  // TEST_SUITE
