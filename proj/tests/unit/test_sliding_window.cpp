#include "doctest.h"

#include "generators.hpp"
#include "oracle.hpp"
#include "strel/sliding_window.hpp"

#include <vector>

using namespace strel;
namespace st = strel::testing;

namespace {

ValueMatrix one(Interval v) { return ValueMatrix(1, 1, v); }

bool dominates(WindowOp op, const ValueMatrix& x, const ValueMatrix& y) {
  for (std::size_t i = 0; i < x.entries().size(); ++i) {
    const Interval& a = x.entries()[i];
    const Interval& b = y.entries()[i];
    const bool ok = op == WindowOp::Max ? (a.lo >= b.lo && a.hi >= b.hi)
                                        : (a.lo <= b.lo && a.hi <= b.hi);
    if (!ok) {
      return false;
    }
  }
  return true;
}

void check_deque(const SlidingWindow& w) {
  const auto& dq = w.entries();
  for (std::size_t i = 1; i < dq.size(); ++i) {
    CHECK(dq[i - 1].start < dq[i].start);
    // Group aggregates are suffix folds: earlier entries dominate later ones
    // and no two neighbours are equal.
    CHECK(dominates(w.op(), dq[i - 1].value, dq[i].value));
    CHECK_FALSE(dq[i - 1].value == dq[i].value);
  }
}

} // namespace

TEST_CASE("add folds dominated tail entries") {
  SlidingWindow w(WindowOp::Max, 0, 5);
  w.add(0, one({1, 2}));
  w.add(1, one({0, 1}));
  REQUIRE(w.size() == 2);
  w.add(2, one({3, 4}));
  REQUIRE(w.size() == 1);
  CHECK(w.front().start == 0);
  CHECK(w.front().value == one({3, 4}));
}

TEST_CASE("incomparable intervals keep separate groups") {
  SlidingWindow w(WindowOp::Max, 0, 5);
  w.add(0, one({0, 5}));
  w.add(1, one({1, 2}));
  // [1,2] raises the lower end of the first group only.
  REQUIRE(w.size() == 2);
  CHECK(w.entries()[0].value == one({1, 5}));
  CHECK(w.entries()[1].value == one({1, 2}));
  check_deque(w);
}

TEST_CASE("equal neighbours merge into the earlier group") {
  SlidingWindow w(WindowOp::Min, 0, 5);
  w.add(0, one({0, 4}));
  w.add(1, one({1, 3}));
  w.add(2, one({0, 3}));
  REQUIRE(w.size() == 1);
  CHECK(w.front().start == 0);
  CHECK(w.front().value == one({0, 3}));
}

TEST_CASE("window max over a column") {
  const PCSignal s(1, 1,
                   {{0, one({0, 1})}, {2, one({5, 6})}, {3, one({-1, 0})}, {7, one({2, 2})}});
  SlidingWindow w(WindowOp::Max, 1, 2);
  const auto ups = w.evaluate(s, 0, 10);
  REQUIRE_FALSE(ups.empty());
  CHECK(ups.front().begin == 0);
  CHECK(ups.back().end == 10);
  for (std::size_t i = 1; i < ups.size(); ++i) {
    CHECK(ups[i].begin == ups[i - 1].end);
  }
  auto at = [&](double t) {
    for (const auto& u : ups) {
      if (u.begin <= t && t < u.end) {
        return u.values(0, 0);
      }
    }
    FAIL("no update covers " << t);
    return Interval();
  };
  CHECK(at(0) == Interval(5, 6));    // [1,2] meets [2,3)
  CHECK(at(1.5) == Interval(5, 6));
  CHECK(at(1.99) == Interval(5, 6));
  CHECK(at(2) == Interval(-1, 0));   // [3,4] starts where the spike ends
  CHECK(at(2.5) == Interval(-1, 0));
  CHECK(at(5) == Interval(2, 2));
  CHECK(at(9) == Interval(2, 2));
}

TEST_CASE("rejects bad windows") {
  CHECK_THROWS(SlidingWindow(WindowOp::Max, 2, 1));
  CHECK_THROWS(SlidingWindow(WindowOp::Max, -1, 1));
  SlidingWindow w(WindowOp::Max, 0, 1);
  CHECK(w.evaluate(PCSignal::undefined(1, 1), 2, 2).empty());
}

TEST_CASE("property: deque invariants under random adds") {
  st::Rng rng(81);
  for (int n = 0; n < 500; ++n) {
    SlidingWindow w(st::coin(rng, 0.5) ? WindowOp::Max : WindowOp::Min, 0, 100);
    std::vector<Interval> added;
    for (int k = 0; k < 12; ++k) {
      const Interval v = st::random_interval(rng);
      added.push_back(v);
      w.add(k, one(v));
      check_deque(w);
      // The front aggregate is the fold of everything added.
      Interval fold = added[0];
      for (const auto& x : added) {
        fold = w.op() == WindowOp::Max ? imax(fold, x) : imin(fold, x);
      }
      CHECK(w.front().value == one(fold));
    }
  }
}

TEST_CASE("property: window values match direct evaluation") {
  st::Rng rng(82);
  int fragments = 0;
  for (int n = 0; n < 600; ++n) {
    const PCSignal s = st::random_column_signal_real(rng, 2, 10);
    const double a = st::pick(rng, {0, 0.1, 0.5, 1, 1.3});
    const double b = a + st::pick(rng, {0, 0.2, 0.5, 1, 2.7});
    const WindowOp op = st::coin(rng, 0.5) ? WindowOp::Max : WindowOp::Min;
    const double ts = st::pick(rng, {0, 0.3, 1, 2.5});
    const double te = ts + st::pick(rng, {0.1, 1, 4, 9});
    SlidingWindow w(op, a, b);
    const auto ups = w.evaluate(s, ts, te);
    REQUIRE_FALSE(ups.empty());
    CHECK(ups.front().begin == ts);
    CHECK(ups.back().end == te);
    for (std::size_t i = 0; i < ups.size(); ++i) {
      if (i > 0) {
        CHECK(ups[i].begin == ups[i - 1].end);
      }
      // Probe the start and the middle of every output span.
      // The midpoint of a one-ulp span rounds onto its end; skip it there.
      const double mid = ups[i].begin / 2 + ups[i].end / 2;
      for (double t : {ups[i].begin, mid < ups[i].end ? mid : ups[i].begin}) {
        CHECK(ups[i].values == st::naive_window(s, t, a, b, op == WindowOp::Max));
      }
    }
    ++fragments;
  }
  CHECK(fragments == 600);
}
