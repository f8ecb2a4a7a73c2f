#include <doctest.h>

#include <cmath>

#include "wlvc/bounds.hpp"
#include "wlvc/errors.hpp"

using namespace wlvc;

namespace {

BoundParams mk(std::uint64_t d, std::uint64_t L, std::uint64_t p, std::uint64_t u,
               std::uint64_t delta) {
  BoundParams b;
  b.d = d;
  b.L = L;
  b.p = p;
  b.u = u;
  b.delta = delta;
  return b;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("m_star on the reference grid") {
  CHECK(vc_upper(mk(1, 1, 2, 1, 0)).m_star == 36);
  CHECK(vc_upper(mk(1, 1, 2, 1, 1)).m_star == 60);
  CHECK(vc_upper(mk(2, 2, 3, 4, 0)).m_star == 264);
  CHECK(vc_upper(mk(2, 2, 3, 4, 1)).m_star == 590);
  CHECK(vc_upper(mk(3, 2, 5, 10, 2)).m_star == 1515);
  CHECK(vc_upper(mk(2, 3, 2, 2, 0)).m_star == 348);
  CHECK(vc_upper(mk(1, 2, 4, 1, 1)).m_star == 161);
  CHECK(vc_upper(mk(4, 1, 3, 16, 0)).m_star == 550);
  for (const auto& b : {mk(1, 1, 2, 1, 0), mk(2, 2, 3, 4, 1), mk(3, 2, 5, 10, 2)})
    CHECK(vc_upper(b).satisfied);
}

TEST_CASE("solver agrees with the linear scan") {
  for (std::uint64_t d : {1, 2, 3})
    for (std::uint64_t L : {1, 2})
      for (std::uint64_t delta : {0, 1, 2}) {
        const BoundParams b = mk(d, L, 2 + delta, 1 + d, delta);
        const VcUpper fast = vc_upper(b);
        const VcUpper slow = vc_upper_scan(b);
        CHECK(fast.m_star == slow.m_star);
        CHECK(fast.satisfied == slow.satisfied);
        CHECK(fast.floor_m == slow.floor_m);
      }
}

TEST_CASE("m_star is the crossover point") {
  for (const auto& b : {mk(1, 1, 2, 1, 0), mk(2, 2, 3, 4, 1), mk(2, 3, 2, 2, 0)}) {
    const VcUpper r = vc_upper(b);
    REQUIRE(r.satisfied);
    const KBound at = k_bound(r.m_star, b);
    const KBound past = k_bound(r.m_star + 1, b);
    CHECK(bfloat(r.m_star) <= at.log2_rhs);
    CHECK(bfloat(r.m_star + 1) > past.log2_rhs);
  }
}

TEST_CASE("m_star grows with every parameter") {
  const std::uint64_t base = vc_upper(mk(2, 2, 3, 4, 1)).m_star;
  CHECK(vc_upper(mk(3, 2, 3, 4, 1)).m_star > base);
  CHECK(vc_upper(mk(2, 3, 3, 4, 1)).m_star > base);
  CHECK(vc_upper(mk(2, 2, 4, 4, 1)).m_star > base);
  CHECK(vc_upper(mk(2, 2, 3, 9, 1)).m_star > base);
  CHECK(vc_upper(mk(2, 2, 3, 4, 2)).m_star > base);
}

TEST_CASE("side condition floor") {
  CHECK(side_condition_floor(mk(3, 1, 2, 1, 0)) == 7);  // 2d + 1
  CHECK(side_condition_floor(mk(1, 1, 2, 1, 1)) == 5);  // P = d(2dL+L+1)+1
  CHECK(side_condition_floor(mk(2, 2, 3, 4, 2)) == 23);
  CHECK(vc_upper(mk(1, 1, 2, 1, 0)).floor_m == 3);
  const KBound below = k_bound(2, mk(1, 1, 2, 1, 0));
  CHECK_FALSE(below.side_ok);
  const KBound above = k_bound(3, mk(1, 1, 2, 1, 0));
  CHECK(above.side_ok);
}

TEST_CASE("lemma17 sign-pattern counts") {
  CHECK(static_cast<double>(lemma17_bound(1, 1, 1)) ==
        doctest::Approx(std::log2(4 * std::exp(1.0))).epsilon(1e-12));
  CHECK(static_cast<double>(lemma17_bound(3, 2, 1)) ==
        doctest::Approx(std::log2(24 * std::exp(1.0))).epsilon(1e-12));
  CHECK(static_cast<double>(lemma17_bound(5, 0, 3)) == doctest::Approx(1.0));  // degree 0: 2
  CHECK_THROWS_AS(lemma17_bound(2, 1, 3), precondition_error);  // more vars than polynomials
  CHECK_THROWS_AS(lemma17_bound(0, 1, 0), precondition_error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(mk(0, 1, 2, 1, 0)), precondition_error);
  CHECK_THROWS_AS(validate(mk(1, 0, 2, 1, 0)), precondition_error);
  CHECK_THROWS_AS(validate(mk(1, 1, 0, 1, 0)), precondition_error);
  CHECK_THROWS_AS(validate(mk(1, 1, 2, 0, 0)), precondition_error);
  CHECK_THROWS_AS(vc_upper(mk(0, 1, 2, 1, 0)), precondition_error);
}

TEST_CASE("sample_complexity heuristic") {
  CHECK(sample_complexity(0.1, 0.1, 10) == 4845);
  CHECK(sample_complexity(0.1, 0.1, 20) > sample_complexity(0.1, 0.1, 10));
  CHECK(sample_complexity(0.05, 0.1, 10) > sample_complexity(0.1, 0.1, 10));
  CHECK_THROWS_AS(sample_complexity(0.0, 0.1, 10), precondition_error);
  CHECK_THROWS_AS(sample_complexity(0.1, 0.0, 10), precondition_error);
  CHECK_THROWS_AS(sample_complexity(0.1, 1.0, 10), precondition_error);
  CHECK_THROWS_AS(sample_complexity(0.1, 0.1, 0), precondition_error);
}

TEST_CASE("regime map") {
  RegimeQuery q;
  q.uniform = false;
  CHECK(regime(q).name == "non_uniform");

  q = RegimeQuery{};
  q.bitlength = 12;
  CHECK(regime(q).name == "bitlength");

  q = RegimeQuery{};
  q.color_bound = 9;
  CHECK(regime(q).name == "color_complexity");

  q = RegimeQuery{};
  q.bitlength = 12;
  q.color_bound = 9;
  CHECK(regime(q).name == "bitlength");  // bitlength wins

  q = RegimeQuery{};
  CHECK(regime(q).name == "infinite");
  CHECK(regime(q).bound == "∞");
}

TEST_CASE("asymptotic classes by activation degree") {
  CHECK(asymptotic_class(0) == "O(P log(puP))");
  CHECK(asymptotic_class(1) == "O(LP log(puP))");
  CHECK(asymptotic_class(2) == "O(LP log(puP) + L^2 P log(delta))");
  CHECK(asymptotic_class(7) == asymptotic_class(2));
}

TEST_CASE("scan refuses to stop short of the crossover") {
  CHECK_THROWS_AS(vc_upper_scan(mk(2, 2, 3, 4, 1), 100), precondition_error);
}

}  // TEST_SUITE
