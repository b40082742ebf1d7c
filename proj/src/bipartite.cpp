#include "spreadlab/graphs_bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spreadlab {

namespace {

// Validated (larger side, smaller side, missing-edge count) triple.
struct CanonSpec {
  long a = 0;  // larger side
  long b = 0;  // smaller side
  long r = 0;  // edges missing at one vertex of the larger side
};

CanonSpec canonicalize(const BipartiteSpec& spec) {
  if (spec.p < 1 || spec.q < 1)
    throw std::invalid_argument("near_bipartite: sides must be positive");
  if (spec.m < 1) throw std::invalid_argument("near_bipartite: need m >= 1");
  CanonSpec c;
  c.a = std::max(spec.p, spec.q);
  c.b = std::min(spec.p, spec.q);
  c.r = c.a * c.b - spec.m;
  if (c.r < 0)
    throw std::invalid_argument("near_bipartite: m exceeds p*q");
  if (c.r >= c.b)
    throw std::invalid_argument(
        "near_bipartite: p*q - m must stay below min(p, q)");
  return c;
}

// Larger root of y^2 - m*y + (a-1)(b-r)r, i.e. lambda_max^2 of the quotient.
// The discriminant is nonnegative whenever r < b (both quadratic roots are
// squares of real eigenvalues), but roundoff gets clamped anyway.
double lambda_max_closed(const CanonSpec& c) {
  const double m = (double)(c.a * c.b - c.r);
  if (c.r == 0) return std::sqrt(m);
  const double cc = (double)((c.a - 1) * (c.b - c.r) * c.r);
  const double disc = std::max(0.0, m * m - 4.0 * cc);
  return std::sqrt((m + std::sqrt(disc)) / 2.0);
}

// Closed-form spread without the adjacency cross-check; the public entry
// point adds the check, the bulk sweeps below call this directly.
double spread_closed(const CanonSpec& c) { return 2.0 * lambda_max_closed(c); }

SymMatrix full_adjacency(const CanonSpec& c) {
  const int n = (int)(c.a + c.b);
  SymMatrix g(n);
  // side A = [0, a), side B = [a, a+b); vertex 0 loses its edges to the last
  // r vertices of side B
  for (int i = 0; i < (int)c.a; ++i)
    for (int j = (int)c.a; j < n; ++j) {
      if (i == 0 && j >= n - (int)c.r) continue;
      g.set(i, j, 1.0);
    }
  return g;
}

}  // namespace

QuotientMatrix near_bipartite_quotient(const BipartiteSpec& spec) {
  const CanonSpec c = canonicalize(spec);
  if (c.r == 0) {
    QuotientMatrix q(2);
    q.set(0, 1, (double)c.b);
    q.set(1, 0, (double)c.a);
    return q;
  }
  // orbits: star vertex u, rest of the larger side, the r deprived vertices,
  // the b - r untouched vertices
  QuotientMatrix q(4);
  q.set(0, 3, (double)(c.b - c.r));
  q.set(1, 2, (double)c.r);
  q.set(1, 3, (double)(c.b - c.r));
  q.set(2, 1, (double)(c.a - 1));
  q.set(3, 0, 1.0);
  q.set(3, 1, (double)(c.a - 1));
  return q;
}

double near_bipartite_spread(const BipartiteSpec& spec) {
  const CanonSpec c = canonicalize(spec);
  const double s = spread_closed(c);
  if (c.a + c.b <= 30) {
    const SpectralPair pr = extreme_eigs(full_adjacency(c));
    if (std::abs(pr.spread - s) > 1e-10)
      throw std::logic_error(
          "near_bipartite_spread: closed form disagrees with adjacency "
          "spectrum by " +
          std::to_string(pr.spread - s));
  }
  return s;
}

BestBipartite best_bipartite(int n, long m) {
  if (n < 2) throw std::invalid_argument("best_bipartite: need n >= 2");
  if (m < 1 || m > (long)n * n / 4)
    throw std::invalid_argument("best_bipartite: need 1 <= m <= n^2/4");
  BestBipartite best;
  best.spread = -1.0;
  for (int p = 1; p < n; ++p)
    for (int q = 1; q <= std::min(p, n - p); ++q) {
      const long r = (long)p * q - m;
      if (r < 0 || r >= q) continue;
      const double s = spread_closed(CanonSpec{p, q, r});
      if (s > best.spread) best = BestBipartite{s, p, q};
    }
  if (best.spread < 0.0)
    throw std::invalid_argument("best_bipartite: no admissible side pair");
  return best;
}

int longest_missing_product_run(int n) {
  if (n < 1) throw std::invalid_argument("longest_missing_product_run: n >= 1");
  const int limit = n * n / 4;
  std::vector<char> hit((std::size_t)limit + 1, 0);
  for (int p = 1; p < n; ++p)
    for (int q = 1; q <= std::min(p, n - p); ++q)
      if (p * q <= limit) hit[(std::size_t)(p * q)] = 1;
  int run = 0, best = 0;
  for (int m = 1; m < limit; ++m) {
    run = hit[(std::size_t)m] ? 0 : run + 1;
    best = std::max(best, run);
  }
  return best;
}

QuotientMatrix plus_edge_quotient(int n, int k) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("plus_edge_quotient: n must be even, >= 6");
  const int h = n / 2;
  if (k < 1 || k > h - 2)
    throw std::invalid_argument("plus_edge_quotient: need 1 <= k <= n/2 - 2");
  // orbits: the larger side (h + k vertices), the two endpoints of the extra
  // edge inside the smaller side, the rest of the smaller side
  QuotientMatrix q(3);
  q.set(0, 1, 2.0);
  q.set(0, 2, (double)(h - k - 2));
  q.set(1, 0, (double)(h + k));
  q.set(1, 1, 1.0);
  q.set(2, 0, (double)(h + k));
  return q;
}

GapRecord plus_edge_gap(int n, double eps) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("plus_edge_gap: n must be even, >= 6");
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("plus_edge_gap: need 0 < eps <= 1");
  const int h = n / 2;
  int k = 0;
  for (int cand = 1; cand <= h - 2; ++cand)
    if (1.0 - 2.0 * cand * cand / n < eps / 2.0) {
      k = cand;
      break;
    }
  if (k == 0)
    throw std::invalid_argument("plus_edge_gap: no admissible k for this eps");

  GapRecord rec;
  rec.n = n;
  rec.m = (long)(h + k) * (h - k) + 1;
  rec.s_upper = 2.0 * std::sqrt((double)rec.m);

  const std::vector<double> ev = real_eigs_small(plus_edge_quotient(n, k));
  rec.s_lower = ev.front() - ev.back();

  const BestBipartite bb = best_bipartite(n, rec.m);
  rec.s_b = bb.spread;
  rec.best_p = bb.p;
  rec.best_q = bb.q;
  if (rec.s_b > rec.s_upper + 1e-9)
    throw std::logic_error("plus_edge_gap: bipartite spread above 2*sqrt(m)");
  rec.relative_gap = (rec.s_lower - rec.s_b) / rec.s_lower;
  return rec;
}

BoundSweepReport spread_bound_sweep(int n) {
  if (n < 4 || n > 200)
    throw std::invalid_argument("spread_bound_sweep: need 4 <= n <= 200");
  BoundSweepReport rep;
  const long limit = (long)n * n / 4;
  for (long m = 1; m <= limit; ++m) {
    long min_r = -1;
    double best = -1.0;
    for (int p = 1; p < n; ++p)
      for (int q = 1; q <= std::min(p, n - p); ++q) {
        const long r = (long)p * q - m;
        if (r < 0 || r >= q) continue;
        if (min_r < 0 || r < min_r) {
          min_r = r;
          best = spread_closed(CanonSpec{p, q, r});
        } else if (r == min_r) {
          best = std::max(best, spread_closed(CanonSpec{p, q, r}));
        }
      }
    if (min_r < 0)
      throw std::logic_error("spread_bound_sweep: no admissible pair at m=" +
                             std::to_string(m));
    ++rep.checked;
    rep.max_r = std::max(rep.max_r, min_r);
    if ((double)min_r > 2.0 * std::pow((double)m, 0.25)) ++rep.r_violations;
    const double ceiling = 2.0 * std::sqrt((double)m);
    const double rel = (ceiling - best) / ceiling;
    rep.max_relative_gap = std::max(rep.max_relative_gap, rel);
    if (rel > std::pow((double)m, -0.75) + 16.0 * std::pow((double)m, -1.5))
      ++rep.gap_violations;
  }
  return rep;
}

}  // namespace spreadlab
