#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/spectra.hpp"

namespace spreadlab {

// Simple undirected graph on up to 64 vertices, adjacency rows as bitmasks.
struct Graph {
  int n = 0;
  std::array<std::uint64_t, 64> adj{};

  Graph() = default;
  explicit Graph(int n_);

  bool has_edge(int u, int v) const { return (adj[u] >> v) & 1u; }
  void add_edge(int u, int v);  // u != v; loops rejected
  int degree(int u) const;
  int edge_count() const;
  bool connected() const;
  std::vector<int> degree_sequence() const;  // sorted descending
  SymMatrix adjacency_matrix() const;
  std::vector<std::pair<int, int>> edges() const;
};

// (K_{n1} ∪ I_{n2}) joined to I_{n3}
struct JoinSpec {
  int n1 = 0;  // clique size
  int n2 = 0;  // independent part on the clique side
  int n3 = 0;  // independent part everything joins to
};

Graph build_join(const JoinSpec& spec);

// threshold graph on k vertices from a creation sequence: vertex 0 starts
// alone, then bit i-1 of seq decides vertex i (1 = dominating, 0 = isolated)
Graph build_threshold(int k, std::uint32_t seq);

// disjoint union plus all cross edges
Graph join_graphs(const Graph& a, const Graph& b);

// nesting-neighborhood characterization: for every vertex pair, one punctured
// neighborhood contains the other
bool is_threshold(const Graph& g);

enum class BruteMode {
  full,            // every labeled graph, n <= 7
  threshold_join,  // joins of two threshold graphs, n <= 24
};

struct BruteResult {
  Graph best;
  double spread = 0.0;
  std::uint64_t candidates = 0;
  // degree sequences tied with the best within 1e-9, other than the best's
  // own; distinct sequences only
  std::vector<std::vector<int>> co_maximizers;
};

// jobs = 0 picks a thread count automatically; the result is deterministic
// regardless.  Throws std::invalid_argument when n is out of range for the
// mode.
BruteResult brute_force_max_spread(int n, BruteMode mode, int jobs = 0);

// executable form of the structural facts about spread maximizers: sign of
// x_u x_v - z_u z_v vs. adjacency, join split along the sign of z, and
// threshold-ness of both sides
struct StructureReport {
  int adjacent_violations = 0;     // adjacent pairs with x_u x_v - z_u z_v < -tol
  int nonadjacent_violations = 0;  // non-adjacent pairs with it > tol
  int indeterminate = 0;           // pairs inside the tolerance band
  bool join_confirmed = false;     // every P-N pair adjacent, P = {u : z_u >= 0}
  bool p_side_threshold = false;
  bool n_side_threshold = false;
  int p_size = 0;
  int n_size = 0;
};

// Throws std::invalid_argument on a disconnected graph.
StructureReport check_lemma21(const Graph& g, double tol = 1e-9);

// max over vertex pairs of |(l1 x_u^2 - ln z_u^2) - (l1 x_v^2 - ln z_v^2)|,
// a flatness diagnostic for the extremal family; not asserted anywhere
double ellipse_deviation(const Graph& g);

namespace detail {
// spread of join(threshold(k1,s1), threshold(k2,s2)) through its twin-class
// quotient; cheap enough for the bulk enumeration and pinned against the
// dense adjacency route by tests
double threshold_join_spread(int k1, std::uint32_t s1, int k2, std::uint32_t s2);
}  // namespace detail

}  // namespace spreadlab
