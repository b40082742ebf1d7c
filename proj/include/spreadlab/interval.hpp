#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spreadlab {

// Closed interval over the extended reals.  lo <= hi always, +-inf allowed as
// endpoints, NaN never stored.  The empty set is a distinguished state (vacant),
// never encoded as lo > hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool vacant = false;

  static Interval make(double lo, double hi);  // lo <= hi required
  static Interval point(double v) { return make(v, v); }
  static Interval around(double v);  // 1-ulp outward enclosure of v
  static Interval whole();
  static Interval none();

  bool contains(double v) const { return !vacant && lo <= v && v <= hi; }
  double width() const { return hi - lo; }
  double mid() const;
};

// Finite union of pairwise-disjoint, non-adjacent closed intervals, sorted by
// lo.  An empty parts list is the empty set.  Every operation renormalizes;
// unions are kept exact up to 8 parts, beyond that the hull is taken.
struct IntervalSet {
  std::vector<Interval> parts;

  IntervalSet() = default;  // empty set
  IntervalSet(double lo, double hi) : IntervalSet(Interval::make(lo, hi)) {}
  explicit IntervalSet(Interval iv);

  static IntervalSet point(double v) { return IntervalSet(Interval::point(v)); }
  static IntervalSet around(double v) { return IntervalSet(Interval::around(v)); }
  static IntervalSet whole() { return IntervalSet(Interval::whole()); }

  bool empty() const { return parts.empty(); }
  bool contains(double v) const;
  double lo() const;  // of the hull; empty set has no endpoints (asserts)
  double hi() const;
};

IntervalSet add(const IntervalSet& x, const IntervalSet& y);
IntervalSet sub(const IntervalSet& x, const IntervalSet& y);
IntervalSet mul(const IntervalSet& x, const IntervalSet& y);
IntervalSet div(const IntervalSet& x, const IntervalSet& y);
IntervalSet sqrt(const IntervalSet& x);
IntervalSet intersect(const IntervalSet& x, const IntervalSet& y);
IntervalSet join(const IntervalSet& x, const IntervalSet& y);  // set union
Interval hull(const IntervalSet& x);

// 1/y including the zero-straddling two-part case.  div() is mul(x, recip(y)).
IntervalSet recip(const IntervalSet& y);
// Tighter than mul(x,x): knows both factors are the same set.
IntervalSet square(const IntervalSet& x);
IntervalSet neg(const IntervalSet& x);

inline IntervalSet operator+(const IntervalSet& a, const IntervalSet& b) { return add(a, b); }
inline IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) { return sub(a, b); }
inline IntervalSet operator*(const IntervalSet& a, const IntervalSet& b) { return mul(a, b); }
inline IntervalSet operator/(const IntervalSet& a, const IntervalSet& b) { return div(a, b); }
inline IntervalSet operator-(const IntervalSet& a) { return neg(a); }
inline IntervalSet operator+(double a, const IntervalSet& b) { return add(IntervalSet::point(a), b); }
inline IntervalSet operator+(const IntervalSet& a, double b) { return add(a, IntervalSet::point(b)); }
inline IntervalSet operator-(double a, const IntervalSet& b) { return sub(IntervalSet::point(a), b); }
inline IntervalSet operator-(const IntervalSet& a, double b) { return sub(a, IntervalSet::point(b)); }
inline IntervalSet operator*(double a, const IntervalSet& b) { return mul(IntervalSet::point(a), b); }
inline IntervalSet operator*(const IntervalSet& a, double b) { return mul(a, IntervalSet::point(b)); }
inline IntervalSet operator/(const IntervalSet& a, double b) { return div(a, IntervalSet::point(b)); }
inline IntervalSet operator/(double a, const IntervalSet& b) { return div(IntervalSet::point(a), b); }

// Debug serialization: [[lo,hi],...] with "-inf"/"inf" string sentinels.
std::string to_json(const IntervalSet& x);

// Division by an exact zero point ([0,0]) yields the empty set and bumps this
// thread-local counter so callers can tell a degenerate branch from a plain
// constraint violation.
std::uint64_t div_by_zero_point_count();
void reset_div_by_zero_point_count();

// Directed-rounding scalar kernels.  Each returns the IEEE round-to-nearest
// result stepped one ulp outward only when the operation was inexact in the
// unsound direction (FMA / two-sum error-term test), so exactly representable
// results stay exact.  Exposed for the containment test suite.
namespace rounding {
double add_lo(double a, double b);
double add_hi(double a, double b);
double sub_lo(double a, double b);
double sub_hi(double a, double b);
double mul_lo(double a, double b);
double mul_hi(double a, double b);
double div_lo(double a, double b);
double div_hi(double a, double b);
double sqrt_lo(double a);
double sqrt_hi(double a);
}  // namespace rounding

}  // namespace spreadlab
