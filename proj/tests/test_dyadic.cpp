#include <doctest.h>

#include "testutil.hpp"
#include "wlvc/dyadic.hpp"
#include "wlvc/errors.hpp"

using wlvc::bigint;
using wlvc::Dyadic;

TEST_SUITE("dyadic") {

TEST_CASE("construction normalizes to an odd mantissa") {
  Dyadic a(bigint(12), 0);  // 12 = 3 * 2^2
  CHECK(a.mantissa() == 3);
  CHECK(a.exponent() == 2);
  CHECK(a == Dyadic(12));

  Dyadic z(bigint(0), 17);
  CHECK(z.is_zero());
  CHECK(z.exponent() == 0);
  CHECK(z == Dyadic(0));
}

TEST_CASE("pow2 and scale_pow2") {
  CHECK(Dyadic::pow2(-3).to_double() == doctest::Approx(0.125));
  CHECK(Dyadic::pow2(0) == Dyadic(1));
  CHECK(Dyadic(5).scale_pow2(2) == Dyadic(20));
  CHECK(Dyadic(20).scale_pow2(-2) == Dyadic(5));
}

TEST_CASE("exact arithmetic on eighths") {
  const Dyadic three_eighths(bigint(3), -3);
  const Dyadic one_eighth(bigint(1), -3);
  CHECK(three_eighths + one_eighth == Dyadic(bigint(1), -1));
  CHECK(three_eighths - one_eighth == Dyadic(bigint(1), -2));
  CHECK(three_eighths * Dyadic(8) == Dyadic(3));
  CHECK((-three_eighths) + three_eighths == Dyadic(0));
}

TEST_CASE("comparisons are exact, not float-mediated") {
  // 2^-60 apart: indistinguishable in double, distinct here
  const Dyadic a = Dyadic(1) + Dyadic::pow2(-60);
  CHECK(a != Dyadic(1));
  CHECK(a > Dyadic(1));
  CHECK(Dyadic(1) < a);
  CHECK(a.to_double() == 1.0);
}

TEST_CASE("integer predicates") {
  CHECK(Dyadic(7).is_integer());
  CHECK(Dyadic(0).is_integer());
  CHECK_FALSE(Dyadic(bigint(7), -1).is_integer());
  CHECK(Dyadic(bigint(3), 4).to_integer() == 48);
  CHECK(Dyadic(-6).to_integer() == -6);
}

TEST_CASE("mantissa_bits and encoded_bits") {
  CHECK(Dyadic(0).mantissa_bits() == 0);
  CHECK(Dyadic(1).mantissa_bits() == 1);
  CHECK(Dyadic(3).mantissa_bits() == 2);
  CHECK(Dyadic(bigint(255), -9).mantissa_bits() == 8);
  CHECK(Dyadic(-4).mantissa_bits() == 1);  // -1 * 2^2
  CHECK(wlvc::encoded_bits(Dyadic(0)) >= 1);
  CHECK(wlvc::encoded_bits(Dyadic(bigint(255), -9)) >= 8);
}

TEST_CASE("str renders exactly") {
  CHECK(Dyadic(5).str() == "5");
  CHECK(Dyadic(bigint(7), -3).str() == "7*2^-3");
  CHECK(Dyadic(bigint(-3), 2).str() == "-3*2^2");
  CHECK(Dyadic(0).str() == "0");
}

TEST_CASE("algebra holds on random values") {
  auto g = tt::rng(0x5eed);
  for (int i = 0; i < 500; ++i) {
    const Dyadic a = tt::random_dyadic(g), b = tt::random_dyadic(g), c = tt::random_dyadic(g);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b - b == a);
    if (a != b) CHECK(((a < b) != (b < a)));
  }
}

TEST_CASE("ordering agrees with subtraction sign") {
  auto g = tt::rng(0xbeef);
  for (int i = 0; i < 200; ++i) {
    const Dyadic a = tt::random_dyadic(g), b = tt::random_dyadic(g);
    const Dyadic d = a - b;
    CHECK((a < b) == (d.sign() < 0));
    CHECK((a == b) == d.is_zero());
  }
}

}  // TEST_SUITE
