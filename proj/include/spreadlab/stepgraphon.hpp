// Seven-block stepgraphon: the fixed join pattern, spread evaluation over
// block weights, contour-grid data for the two weight-space plots, and the
// polynomials shared with the interval elimination pass.
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "spreadlab/interval.hpp"
#include "spreadlab/spectra.hpp"

namespace spreadlab {

inline constexpr int kNumBlocks = 7;

// The fixed 7x7 0/1 pattern.  Blocks are 0-based here (the derivation
// counts from 1); blocks 0, 1 and 4 carry loops.  Neighborhoods are nested:
// row 0 is everything, rows 1..3 successively drop blocks 3, 2, 1, and rows
// 4..6 successively drop blocks 6, 5, 4.
const SymMatrix& gstar_pattern();

// true iff blocks i and j are joined (i == j asks about the loop).
bool pattern_has_edge(int i, int j);

// Block weights: nonnegative, summing to one.  The constructor renormalizes
// sums that are off by <= 1e-9 and rejects anything worse, so downstream
// code can rely on an exact-to-roundoff simplex point.
struct WeightVector {
  std::array<double, kNumBlocks> a{};

  WeightVector() { a[0] = 1.0; }
  explicit WeightVector(const std::array<double, kNumBlocks>& w);
};

// Spread of the weighted pattern: restrict pattern and weights to the
// support of alpha, scale as sqrt(a_i a_j) * pattern, and return
// max(lmax, 0) - min(lmin, 0).  The clamps account for the essential
// spectrum at zero, which the finite block matrix only sees when some
// weight vanishes (e.g. all mass on the looped block 0 still spreads 1).
double spread_of_weights(const WeightVector& alpha);

// Closed form sqrt(a1 * (4 - 3 a1)) for the two-block split (a1 on looped
// block 0, the rest on loopless block 6).  Cross-checked internally against
// spread_of_weights on every call; disagreement beyond 1e-12 throws
// logic_error since the two routes must be computing the same number.
double two_block_spread(double a1);

enum class ContourPlot { A, B };

// CSV "x,y,spread" over the triangular grid x, y >= 0, x + y <= 1 with the
// given step (valid range [1/200, 1/20]).
//   Plot A: x = a3+a4, y = a6+a7; value = max spread over the free masses
//           (split of x, split of y, and the a1/a2/a5 simplex), found by
//           projected coordinate search with random restarts.
//   Plot B: a2 = a3 = a4 = 0, a5 = y, a7 = x; the remaining mass goes to
//           a1/a6 and the value maximizes over that one split.  (The plot
//           being reproduced leaves the split unspecified; maximizing is
//           the reading consistent with "best spread at this (x, y)".)
// Infeasible cells (x + y > 1) carry "." in the spread column.  Restart
// seeds are a fixed function of the cell, so output is deterministic and
// independent of jobs.
std::string contour_grid(ContourPlot plot, double step, int jobs = 1);

// One support pattern with the per-block quantities the elimination pass
// tracks.  T is double for plain evaluation, IntervalSet for verified
// bounds.
template <class T>
struct CaseState {
  std::uint8_t support = 0;  // bit i set => block i active
  std::array<T, kNumBlocks> alpha{};
  std::array<T, kNumBlocks> f{};
  std::array<T, kNumBlocks> g{};
  T mu{};
  T nu{};

  bool active(int i) const { return (support >> i) & 1; }
};

// ---------------------------------------------------------------------------
// The four polynomials in a block weight x and the extreme eigenvalues
// mu > 0 > nu that the per-block eigenvector identities reduce to.  Generic
// over double and IntervalSet so the plain-float cross checks and the
// verified elimination pass evaluate literally the same expressions.

namespace poly_detail {
inline double sq(double x) { return x * x; }
inline IntervalSet sq(const IntervalSet& x) { return square(x); }
}  // namespace poly_detail

template <class T>
T F1(const T& x, const T& mu, const T& nu) {
  return (mu + nu) * x + 2.0 * (mu * nu);
}

template <class T>
T F2(const T& x, const T& mu, const T& nu) {
  const T p = mu + nu;
  const T q = mu * nu;
  return 2.0 * poly_detail::sq(q + p * x) + p * (x * x * x);
}

template <class T>
T F3(const T& x, const T& mu, const T& nu) {
  using poly_detail::sq;
  const T p = mu + nu;
  const T q = mu * nu;
  const T px = p * x;
  const T x3 = x * x * x;
  return 4.0 * (sq(q) * sq(q + px)) -
         2.0 * ((p * x3) * ((px + q) * (px + 3.0 * q))) -
         (p * (x3 * sq(x))) * (2.0 * q + px);
}

template <class T>
T F4(const T& x, const T& mu, const T& nu) {
  using poly_detail::sq;
  const T p = mu + nu;
  const T q = mu * nu;
  const T px = p * x;
  const T x3 = x * x * x;
  const T x4 = sq(sq(x));
  return 4.0 * (sq(q) * x) * ((3.0 * px + q) * (2.0 * px + q) - q * px) +
         4.0 * (p * x4) * (sq(px + q) + sq(p) * (px + 4.0 * q)) +
         sq(p) * (x4 * x3);
}

}  // namespace spreadlab
