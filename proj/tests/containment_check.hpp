#pragma once

// Randomized containment harness for the interval layer, shared by the unit
// suite and the acceptance gate.  The oracle side recomputes each sampled
// u op v exactly (error-free transforms: two-sum / FMA residuals) and decides
// membership against the returned endpoints without trusting the library's
// rounding path.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "spreadlab/interval.hpp"
#include "spreadlab/util.hpp"

namespace containment {

using spreadlab::Interval;
using spreadlab::IntervalSet;

// exact = s + e (double-double).  Decides s+e >= lo without rounding: the
// rounding error |e| <= 0.5 ulp(s) can never bridge a full float step.
inline bool dd_at_least(double s, double e, double lo) {
  if (s > lo) return true;
  if (s < lo) return false;
  return e >= 0;
}

inline bool dd_at_most(double s, double e, double hi) {
  if (s < hi) return true;
  if (s > hi) return false;
  return e <= 0;
}

inline bool part_contains_dd(const Interval& p, double s, double e) {
  return dd_at_least(s, e, p.lo) && dd_at_most(s, e, p.hi);
}

inline bool set_contains_dd(const IntervalSet& x, double s, double e) {
  for (const Interval& p : x.parts)
    if (part_contains_dd(p, s, e)) return true;
  return false;
}

// Membership of the exact sum/difference/product via its error term.
inline bool contains_exact_add(const IntervalSet& r, double u, double v) {
  double s = u + v;
  if (std::isinf(s)) return r.contains(s);  // overflow: s is already outward
  double bv = s - u, av = s - bv;
  double e = (u - av) + (v - bv);
  return set_contains_dd(r, s, e);
}

inline bool contains_exact_mul(const IntervalSet& r, double u, double v) {
  double p = u * v;
  if (std::isinf(p)) return r.contains(p);
  double e = std::fma(u, v, -p);
  return set_contains_dd(r, p, e);
}

// Quotient and root are not double-double representable; the residual sign
// settles the boundary cases instead.
inline bool contains_exact_div(const IntervalSet& r, double u, double v) {
  double q = u / v;
  if (std::isinf(q) || v == 0.0) return r.contains(q);
  double res = std::fma(q, v, -u);  // exact quotient = q - res/v
  for (const Interval& p : r.parts) {
    bool above_lo = q > p.lo || (q == p.lo && (v > 0 ? res <= 0 : res >= 0));
    bool below_hi = q < p.hi || (q == p.hi && (v > 0 ? res >= 0 : res <= 0));
    if (above_lo && below_hi) return true;
  }
  return false;
}

inline bool contains_exact_sqrt(const IntervalSet& r, double u) {
  double s = std::sqrt(u);
  if (std::isinf(s)) return r.contains(s);
  double res = std::fma(s, s, -u);  // >0 iff s > sqrt(u)
  for (const Interval& p : r.parts) {
    bool above_lo = s > p.lo || (s == p.lo && res <= 0);
    bool below_hi = s < p.hi || (s == p.hi && res >= 0);
    if (above_lo && below_hi) return true;
  }
  return false;
}

// --- random generators -------------------------------------------------------

inline double rand_endpoint(spreadlab::Rng& rng) {
  // Mixed magnitudes with a bias toward the unit range the solver lives in.
  std::uniform_real_distribution<double> unit(-4.0, 4.0);
  std::uniform_int_distribution<int> kind(0, 9);
  int k = kind(rng);
  double v = unit(rng);
  if (k == 0) return 0.0;
  if (k == 1) return std::ldexp(v, (int)(rng() % 600) - 300);
  if (k == 2) return std::floor(v * 8) / 8;  // dyadic grid point
  return v;
}

inline IntervalSet rand_set(spreadlab::Rng& rng, bool allow_inf = true) {
  std::uniform_int_distribution<int> nparts(1, 3);
  IntervalSet out;
  int n = nparts(rng);
  for (int i = 0; i < n; ++i) {
    double a = rand_endpoint(rng), b = rand_endpoint(rng);
    if (a > b) std::swap(a, b);
    if (allow_inf && rng() % 16 == 0) a = -std::numeric_limits<double>::infinity();
    if (allow_inf && rng() % 16 == 0) b = std::numeric_limits<double>::infinity();
    out = spreadlab::join(out, IntervalSet(a, b));
  }
  return out;
}

inline double sample_in(spreadlab::Rng& rng, const IntervalSet& x) {
  const Interval& p = x.parts[rng() % x.parts.size()];
  double lo = std::isinf(p.lo) ? -1e300 : p.lo;
  double hi = std::isinf(p.hi) ? 1e300 : p.hi;
  if (lo > hi) lo = hi;
  std::uniform_int_distribution<int> mode(0, 3);
  double u;
  switch (mode(rng)) {
    case 0: u = lo; break;
    case 1: u = hi; break;
    default: {
      std::uniform_real_distribution<double> t(0.0, 1.0);
      u = lo + t(rng) * (hi - lo);
      if (std::isinf(u) || std::isnan(u)) u = lo * 0.5 + hi * 0.5;
      break;
    }
  }
  if (u < lo) u = lo;
  if (u > hi) u = hi;
  return u;
}

struct Tally {
  long trials = 0;
  long violations = 0;
  std::string first_failure;
};

// Runs `total` randomized trials across the five operations.
inline Tally run(std::uint64_t seed, long total) {
  spreadlab::Rng rng(seed);
  Tally t;
  while (t.trials < total) {
    IntervalSet X = rand_set(rng);
    IntervalSet Y = rand_set(rng);
    if (X.empty() || Y.empty()) continue;
    double u = sample_in(rng, X);
    double v = sample_in(rng, Y);
    int op = (int)(rng() % 5);
    bool ok = true;
    const char* name = "";
    switch (op) {
      case 0:
        name = "add";
        ok = contains_exact_add(spreadlab::add(X, Y), u, v);
        break;
      case 1:
        name = "sub";
        ok = contains_exact_add(spreadlab::sub(X, Y), u, -v);
        break;
      case 2:
        name = "mul";
        ok = contains_exact_mul(spreadlab::mul(X, Y), u, v);
        break;
      case 3: {
        name = "div";
        if (v == 0.0) continue;  // u/v undefined
        ok = contains_exact_div(spreadlab::div(X, Y), u, v);
        break;
      }
      default: {
        name = "sqrt";
        if (u < 0) continue;
        ok = contains_exact_sqrt(spreadlab::sqrt(X), u);
        break;
      }
    }
    ++t.trials;
    if (!ok) {
      ++t.violations;
      if (t.first_failure.empty()) {
        t.first_failure = std::string(name) + " u=" + std::to_string(u) +
                          " v=" + std::to_string(v) + " X=" + to_json(X) +
                          " Y=" + to_json(Y);
      }
    }
  }
  return t;
}

}  // namespace containment
