#include "doctest.h"

#include "generators.hpp"
#include "strel/interval.hpp"

#include <cmath>
#include <vector>

using namespace strel;
using strel::testing::Rng;
using strel::testing::random_interval;

TEST_CASE("scalar shift and negation") {
  CHECK(add_scalar({1, 3}, 2) == Interval(3, 5));
  CHECK(add_scalar({-kInf, 0}, 5) == Interval(-kInf, 5));
  CHECK(neg({1, 3}) == Interval(-3, -1));
  CHECK(neg(Interval::unknown()) == Interval::unknown());
}

TEST_CASE("interval addition") {
  CHECK(add({1, 2}, {3, 4}) == Interval(4, 6));
  CHECK(add({-kInf, 1}, {2, 5}) == Interval(-kInf, 6));
  CHECK(add({-kInf, 0}, {0, kInf}) == Interval::unknown());
  CHECK_THROWS_AS(add({-kInf, 0}, {kInf, kInf}), IntervalError);
  CHECK_THROWS_AS(add({kInf, kInf}, {-kInf, -kInf}), IntervalError);
  CHECK_THROWS_AS(add_scalar({0, kInf}, -kInf), IntervalError);
}

TEST_CASE("malformed bounds are rejected") {
  CHECK_THROWS_AS(Interval(2, 1), IntervalError);
  CHECK_THROWS_AS(Interval(std::nan(""), 1), IntervalError);
}

TEST_CASE("max and min are endpoint-wise") {
  CHECK(imax({0, 5}, {3, 4}) == Interval(3, 5));
  CHECK(imin({0, 5}, {3, 4}) == Interval(0, 4));
  const std::vector<Interval> xs{{-1, 0}, {-2, 3}, {1, 2}};
  CHECK(imax_all(xs) == Interval(1, 3));
  CHECK(imin_all(xs) == Interval(-2, 0));
  CHECK_THROWS(imax_all(std::vector<Interval>{}));
}

TEST_CASE("strict comparisons may both fail") {
  CHECK(lt({0, 1}, {2, 3}));
  CHECK_FALSE(lt({0, 3}, {2, 5}));
  CHECK_FALSE(gt({0, 3}, {2, 5}));
  CHECK(gt({4, 6}, {1, 2}));
}

TEST_CASE("radius") {
  CHECK(radius({-3, 2}) == Interval(2, 3));
  CHECK(radius({1, 4}) == Interval(1, 4));
  CHECK(radius({-kInf, 1}) == Interval(1, kInf));
}

TEST_CASE("hausdorff distance") {
  CHECK(hausdorff({0, 1}, {2, 5}) == 4);
  CHECK(hausdorff({-kInf, 1}, {-kInf, 3}) == 2);
  CHECK(hausdorff({0, 1}, {0, kInf}) == kInf);
  CHECK(hausdorff(Interval::unknown(), Interval::unknown()) == 0);
}

TEST_CASE("refinement order") {
  CHECK(refines({0, 10}, {2, 6}));
  CHECK(refines({2, 6}, {2, 6}));
  CHECK_FALSE(strictly_refines({2, 6}, {2, 6}));
  CHECK(strictly_refines(Interval::unknown(), {2, 6}));
  CHECK_FALSE(refines({2, 6}, {0, 10}));
  CHECK_FALSE(refines({0, 1}, {0.5, 2}));
}

TEST_CASE("text round trip") {
  CHECK(format_real(kInf) == "inf");
  CHECK(format_real(-kInf) == "-inf");
  CHECK(parse_real("-inf") == -kInf);
  CHECK(parse_real("0.1") == 0.1);
  for (double v : {0.1, 1.0 / 3.0, -2.5e-7, 6371.0088}) {
    CHECK(parse_real(format_real(v)) == v);
  }
  const Interval i(-kInf, 2.5);
  CHECK(parse_interval(to_string(i)) == i);
  CHECK_THROWS(parse_real("abc"));
}

TEST_CASE("property: lattice laws") {
  Rng rng(11);
  for (int n = 0; n < 2000; ++n) {
    const Interval a = random_interval(rng, 0.2);
    const Interval b = random_interval(rng, 0.2);
    const Interval c = random_interval(rng, 0.2);
    CHECK(imax(a, b) == imax(b, a));
    CHECK(imin(a, imin(b, c)) == imin(imin(a, b), c));
    CHECK(imax(a, imin(a, b)) == a);
    CHECK(neg(imax(a, b)) == imin(neg(a), neg(b)));
    CHECK(neg(imin(a, b)) == imax(neg(a), neg(b)));
    CHECK(neg(neg(a)) == a);
    // Monotone in the refinement order.
    const Interval fine(std::max(a.lo, std::min(a.hi, 0.0)), a.hi);
    REQUIRE(refines(a, fine));
    CHECK(refines(imax(a, b), imax(fine, b)));
    CHECK(refines(imin(a, b), imin(fine, b)));
    CHECK(refines(neg(a), neg(fine)));
  }
}

TEST_CASE("property: hausdorff is a pseudometric") {
  Rng rng(12);
  for (int n = 0; n < 2000; ++n) {
    const Interval a = random_interval(rng, 0.2);
    const Interval b = random_interval(rng, 0.2);
    const Interval c = random_interval(rng, 0.2);
    CHECK(hausdorff(a, a) == 0);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c));
    // max/min are 1-Lipschitz in each argument.
    CHECK(hausdorff(imax(a, c), imax(b, c)) <= hausdorff(a, b));
    CHECK(hausdorff(imin(a, c), imin(b, c)) <= hausdorff(a, b));
  }
}
