// Unit and property tests for the interval layer.  The randomized containment
// sweep lives in containment_check.hpp so the acceptance gate can rerun it at
// full volume.

#include <cmath>
#include <limits>

#include "doctest.h"

#include "containment_check.hpp"
#include "spreadlab/interval.hpp"
#include "spreadlab/util.hpp"

using spreadlab::Interval;
using spreadlab::IntervalSet;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool set_eq(const IntervalSet& a, const IntervalSet& b) {
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].lo != b.parts[i].lo || a.parts[i].hi != b.parts[i].hi) return false;
  }
  return true;
}

// A is a subset of B.  Both normalized, so each part of A must sit inside a
// single part of B (gaps between normalized parts are genuine).
bool subset(const IntervalSet& a, const IntervalSet& b) {
  for (const Interval& p : a.parts) {
    bool covered = false;
    for (const Interval& q : b.parts) {
      if (q.lo <= p.lo && p.hi <= q.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool canonical(const IntervalSet& x) {
  if (x.parts.size() > 8) return false;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    const Interval& p = x.parts[i];
    if (p.vacant || std::isnan(p.lo) || std::isnan(p.hi) || p.lo > p.hi) return false;
    if (i > 0 && !(x.parts[i - 1].hi < p.lo)) return false;  // strict gap
  }
  return true;
}

}  // namespace

TEST_CASE("addition with exactly representable endpoints stays exact") {
  IntervalSet r = IntervalSet(1, 2) + IntervalSet(3, 4);
  REQUIRE(r.parts.size() == 1);
  CHECK(r.lo() == 4.0);
  CHECK(r.hi() == 6.0);
}

TEST_CASE("multiplication of negative by positive covers the stated range") {
  IntervalSet r = IntervalSet(-0.2, -0.1) * IntervalSet(2.5, 2.8);
  REQUIRE(r.parts.size() == 1);
  CHECK(r.lo() <= -0.56);
  CHECK(r.hi() >= -0.25);
  // and stays tight: no more than a few ulps of slack
  CHECK(r.lo() >= -0.56 - 1e-15);
  CHECK(r.hi() <= -0.25 + 1e-15);
}

TEST_CASE("division by a positive range covers the endpoint quotients") {
  IntervalSet r = IntervalSet(-0.56, -0.25) / IntervalSet(0.09, 0.54);
  REQUIRE(r.parts.size() == 1);
  CHECK(r.lo() == doctest::Approx(-0.56 / 0.09).epsilon(1e-13));
  CHECK(r.hi() == doctest::Approx(-0.25 / 0.54).epsilon(1e-13));
  CHECK(r.lo() <= -0.56 / 0.09);
  CHECK(r.hi() >= -0.25 / 0.54);
}

TEST_CASE("division by a zero-straddling interval splits into two rays") {
  IntervalSet r = IntervalSet(1, 1) / IntervalSet(-1, 1);
  REQUIRE(r.parts.size() == 2);
  CHECK(r.parts[0].lo == -kInf);
  CHECK(r.parts[0].hi == -1.0);
  CHECK(r.parts[1].lo == 1.0);
  CHECK(r.parts[1].hi == kInf);
}

TEST_CASE("division by a point interval is plain scaling") {
  IntervalSet r = IntervalSet(2, 4) / IntervalSet(2, 2);
  REQUIRE(r.parts.size() == 1);
  CHECK(r.lo() == 1.0);
  CHECK(r.hi() == 2.0);
}

TEST_CASE("square root clips the negative side") {
  IntervalSet r = spreadlab::sqrt(IntervalSet(-1, 4));
  REQUIRE(r.parts.size() == 1);
  CHECK(r.lo() == 0.0);
  CHECK(r.hi() == 2.0);

  // fully negative input has no real root at all
  CHECK(spreadlab::sqrt(IntervalSet(-3, -2)).empty());
}

TEST_CASE("intersection respects multi-part structure") {
  IntervalSet rays = spreadlab::join(IntervalSet(-kInf, -1), IntervalSet(1, kInf));
  IntervalSet r = spreadlab::intersect(rays, IntervalSet(-2, 2));
  REQUIRE(r.parts.size() == 2);
  CHECK(r.parts[0].lo == -2.0);
  CHECK(r.parts[0].hi == -1.0);
  CHECK(r.parts[1].lo == 1.0);
  CHECK(r.parts[1].hi == 2.0);
}

TEST_CASE("reciprocal part counts across the four sign placements") {
  CHECK(spreadlab::recip(IntervalSet(1, 2)).parts.size() == 1);
  CHECK(spreadlab::recip(IntervalSet(0, 2)).parts.size() == 1);
  CHECK(spreadlab::recip(IntervalSet(-2, 0)).parts.size() == 1);
  CHECK(spreadlab::recip(IntervalSet(-1, 1)).parts.size() == 2);

  IntervalSet touching = spreadlab::recip(IntervalSet(0, 2));
  CHECK(touching.lo() == 0.5);
  CHECK(touching.hi() == kInf);
}

TEST_CASE("division by the zero point yields empty and trips the diagnostic") {
  spreadlab::reset_div_by_zero_point_count();
  IntervalSet r = IntervalSet(1, 2) / IntervalSet::point(0.0);
  CHECK(r.empty());
  CHECK(spreadlab::div_by_zero_point_count() == 1);

  // a zero point hiding inside a multi-part divisor still counts once
  IntervalSet y = spreadlab::join(IntervalSet::point(0.0), IntervalSet(3, 4));
  IntervalSet r2 = IntervalSet(1, 2) / y;
  CHECK(!r2.empty());  // the [3,4] branch survives
  CHECK(spreadlab::div_by_zero_point_count() == 2);
  spreadlab::reset_div_by_zero_point_count();
}

TEST_CASE("empty set propagates through every operation") {
  IntervalSet e;
  IntervalSet x(1, 2);
  CHECK((e + x).empty());
  CHECK((x - e).empty());
  CHECK((e * x).empty());
  CHECK((x / e).empty());
  CHECK((e / x).empty());
  CHECK(spreadlab::sqrt(e).empty());
  CHECK(spreadlab::intersect(e, x).empty());
  CHECK(set_eq(spreadlab::join(e, x), x));
  CHECK(spreadlab::hull(e).vacant);
}

TEST_CASE("more than eight parts collapse to the hull") {
  IntervalSet x;
  for (int k = 0; k < 9; ++k) {
    x = spreadlab::join(x, IntervalSet(2.0 * k, 2.0 * k + 0.5));
  }
  REQUIRE(x.parts.size() == 1);
  CHECK(x.lo() == 0.0);
  CHECK(x.hi() == 16.5);
}

TEST_CASE("join merges adjacent and overlapping parts") {
  IntervalSet x = spreadlab::join(IntervalSet(0, 1), IntervalSet(1, 2));
  CHECK(x.parts.size() == 1);  // shared endpoint merges
  IntervalSet y = spreadlab::join(IntervalSet(0, 1), IntervalSet(1.5, 2));
  CHECK(y.parts.size() == 2);
}

TEST_CASE("derived constant enclosure for 2/sqrt(3) is tight and correct") {
  IntervalSet c = spreadlab::sqrt(IntervalSet::point(4.0) / IntervalSet::point(3.0));
  REQUIRE(c.parts.size() == 1);
  // true value 1.15470053837925152901...
  CHECK(c.lo() >= 1.1547005383792513);
  CHECK(c.lo() <= 1.1547005383792516);
  CHECK(c.hi() >= 1.1547005383792514);
  CHECK(c.hi() <= 1.1547005383792518);
}

TEST_CASE("square is at least as tight as naive self-multiplication") {
  IntervalSet x(-2, 3);
  IntervalSet sq = spreadlab::square(x);
  REQUIRE(sq.parts.size() == 1);
  CHECK(sq.lo() == 0.0);
  CHECK(sq.hi() == 9.0);
  CHECK(subset(sq, x * x));  // x*x gives [-6,9]
}

TEST_CASE("negation flips exactly") {
  IntervalSet x = spreadlab::join(IntervalSet(-1, 2), IntervalSet(5, kInf));
  IntervalSet n = spreadlab::neg(x);
  REQUIRE(n.parts.size() == 2);
  CHECK(n.parts[0].lo == -kInf);
  CHECK(n.parts[0].hi == -5.0);
  CHECK(n.parts[1].lo == -2.0);
  CHECK(n.parts[1].hi == 1.0);
}

TEST_CASE("json serialization uses string sentinels for infinities") {
  IntervalSet x = spreadlab::join(IntervalSet(-kInf, -1), IntervalSet(0.5, kInf));
  CHECK(spreadlab::to_json(x) == "[[\"-inf\",-1],[0.5,\"inf\"]]");
  CHECK(spreadlab::to_json(IntervalSet()) == "[]");
}

TEST_CASE("scalar kernels: outward step is at most one ulp and exact ops stay put") {
  namespace rd = spreadlab::rounding;
  // exact cases
  CHECK(rd::add_lo(1.0, 2.0) == 3.0);
  CHECK(rd::add_hi(1.0, 2.0) == 3.0);
  CHECK(rd::mul_lo(1.5, 2.0) == 3.0);
  CHECK(rd::mul_hi(1.5, 2.0) == 3.0);
  CHECK(rd::div_lo(1.0, 4.0) == 0.25);
  CHECK(rd::div_hi(1.0, 4.0) == 0.25);
  CHECK(rd::sqrt_lo(9.0) == 3.0);
  CHECK(rd::sqrt_hi(9.0) == 3.0);
  // inexact: exactly one side steps
  CHECK(rd::div_lo(1.0, 3.0) < rd::div_hi(1.0, 3.0));
  CHECK(std::nextafter(rd::div_lo(1.0, 3.0), kInf) == rd::div_hi(1.0, 3.0));
  CHECK(std::nextafter(rd::sqrt_lo(2.0), kInf) == rd::sqrt_hi(2.0));

  spreadlab::Rng rng(7);
  std::uniform_real_distribution<double> d(-100.0, 100.0);
  for (int i = 0; i < 20000; ++i) {
    double a = d(rng), b = d(rng);
    auto within_one_ulp = [](double lo, double hi) {
      return lo == hi || std::nextafter(lo, kInf) == hi;
    };
    CHECK(within_one_ulp(rd::add_lo(a, b), rd::add_hi(a, b)));
    CHECK(within_one_ulp(rd::sub_lo(a, b), rd::sub_hi(a, b)));
    CHECK(within_one_ulp(rd::mul_lo(a, b), rd::mul_hi(a, b)));
    if (b != 0.0) CHECK(within_one_ulp(rd::div_lo(a, b), rd::div_hi(a, b)));
    if (a >= 0.0) CHECK(within_one_ulp(rd::sqrt_lo(a), rd::sqrt_hi(a)));
  }
}

TEST_CASE("randomized containment sweep finds no violations") {
  containment::Tally t = containment::run(20260819, 100000);
  INFO("first failure: ", t.first_failure);
  CHECK(t.trials == 100000);
  CHECK(t.violations == 0);
}

TEST_CASE("results are always canonical and exact identities hold") {
  spreadlab::Rng rng(42);
  IntervalSet zero = IntervalSet::point(0.0);
  IntervalSet whole = IntervalSet::whole();
  for (int i = 0; i < 2000; ++i) {
    IntervalSet x = containment::rand_set(rng);
    IntervalSet y = containment::rand_set(rng);
    CHECK(canonical(x));
    CHECK(canonical(x + y));
    CHECK(canonical(x - y));
    CHECK(canonical(x * y));
    CHECK(canonical(x / y));
    CHECK(canonical(spreadlab::sqrt(x)));
    CHECK(canonical(spreadlab::intersect(x, y)));
    // adding an exact zero and clipping by the whole line are no-ops
    CHECK(set_eq(x + zero, x));
    CHECK(set_eq(spreadlab::intersect(x, whole), x));
    // x - x must contain zero (not equal it)
    CHECK((x - x).contains(0.0));
  }
}

TEST_CASE("inclusion monotonicity under widening of either operand") {
  spreadlab::Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    IntervalSet x = containment::rand_set(rng);
    IntervalSet y = containment::rand_set(rng);
    IntervalSet xw = spreadlab::join(x, containment::rand_set(rng));
    IntervalSet yw = spreadlab::join(y, containment::rand_set(rng));
    CHECK(subset(x + y, xw + yw));
    CHECK(subset(x - y, xw - yw));
    CHECK(subset(x * y, xw * yw));
    CHECK(subset(x / y, xw / yw));
    CHECK(subset(spreadlab::sqrt(x), spreadlab::sqrt(xw)));
    CHECK(subset(spreadlab::intersect(x, y), spreadlab::intersect(xw, yw)));
  }
}

TEST_CASE("mixed scalar operators behave like point intervals") {
  IntervalSet x(1, 2);
  CHECK(set_eq(2.0 * x, IntervalSet(2, 4)));
  CHECK(set_eq(x + 1.0, IntervalSet(2, 3)));
  CHECK(set_eq(1.0 - x, IntervalSet(-1, 0)));
  CHECK(set_eq(x / 2.0, IntervalSet(0.5, 1)));
}
