// Near-complete bipartite graphs: spread of K_{p,q} minus a star at one
// vertex, the best-bipartite spread over all admissible side pairs, gap
// statistics of the achievable edge counts, and the bipartite-plus-one-edge
// family that separates the two.
#pragma once

#include "spreadlab/spectra.hpp"

namespace spreadlab {

// Complete bipartite graph with sides p, q minus (pq - m) edges, all removed
// at a single vertex of the larger side.  Requires 0 <= pq - m < min(p, q).
struct BipartiteSpec {
  int p = 1;
  int q = 1;
  long m = 1;
};

// Equitable-partition quotient of the spec's graph: 2x2 when no edge is
// missing, else 4x4 over the orbits (star vertex, rest of its side, deprived
// vertices, untouched vertices).
QuotientMatrix near_bipartite_quotient(const BipartiteSpec& spec);

// Spread = 2 * lambda_max, where lambda_max^2 is the larger root of
// y^2 - m y + (p-1)(q-r)r (the quotient's characteristic polynomial is
// biquadratic).  For p + q <= 30 the value is cross-checked against the full
// adjacency spectrum on every call; disagreement throws logic_error.
double near_bipartite_spread(const BipartiteSpec& spec);

// Best spread among all near-complete bipartite graphs with n vertices and
// m edges, with the admissible side pairs enumerated outright.
struct BestBipartite {
  double spread = 0.0;
  int p = 0;
  int q = 0;
};
BestBipartite best_bipartite(int n, long m);

// Longest run of consecutive edge counts below floor(n^2/4) that no complete
// bipartite graph on at most n vertices attains (direct sieve over pq).
int longest_missing_product_run(int n);

// Quotient of the complete bipartite graph on sides n/2+k, n/2-k with one
// extra edge inside the smaller side.
QuotientMatrix plus_edge_quotient(int n, int k);

// One data point of the bipartite-vs-general spread separation.
struct GapRecord {
  int n = 0;
  long m = 0;
  double s_upper = 0.0;      // 2*sqrt(m), the universal ceiling
  double s_lower = 0.0;      // spread of the plus-edge graph (not bipartite)
  double s_b = 0.0;          // best bipartite spread at the same n, m
  double relative_gap = 0.0; // (s_lower - s_b) / s_lower
  int best_p = 0;            // argmax sides behind s_b
  int best_q = 0;
};

// Builds the plus-edge family member for even n: picks the smallest k with
// 1 - 2k^2/n < eps/2, sets m = (n/2+k)(n/2-k) + 1, and compares its exact
// quotient spread against the best bipartite spread at the same edge count.
GapRecord plus_edge_gap(int n, double eps);

// Sweep over every m <= floor(n^2/4): the least achievable r = pq - m must
// stay below 2*m^{1/4}, and the best spread at that r must sit within
// m^{-3/4} + 16 m^{-3/2} of the 2*sqrt(m) ceiling, relatively.
struct BoundSweepReport {
  long checked = 0;
  long r_violations = 0;
  long gap_violations = 0;
  long max_r = 0;
  double max_relative_gap = 0.0;
};
BoundSweepReport spread_bound_sweep(int n);

}  // namespace spreadlab
