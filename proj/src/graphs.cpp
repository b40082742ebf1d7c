#include "spreadlab/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spreadlab/util.hpp"

namespace spreadlab {

Graph::Graph(int n_) : n(n_) {
  if (n_ < 0 || n_ > 64) throw std::invalid_argument("Graph: need 0 <= n <= 64");
  adj.fill(0);
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("Graph: no loops");
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("Graph: vertex out of range");
  adj[u] |= std::uint64_t{1} << v;
  adj[v] |= std::uint64_t{1} << u;
}

int Graph::degree(int u) const { return std::popcount(adj[u]); }

int Graph::edge_count() const {
  int total = 0;
  for (int u = 0; u < n; ++u) total += degree(u);
  return total / 2;
}

bool Graph::connected() const {
  if (n <= 1) return true;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= adj[u];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return seen == all;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(n);
  for (int u = 0; u < n; ++u) d[u] = degree(u);
  std::sort(d.rbegin(), d.rend());
  return d;
}

SymMatrix Graph::adjacency_matrix() const {
  SymMatrix m(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (has_edge(u, v)) m.set(u, v, 1.0);
  return m;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (has_edge(u, v)) out.push_back({u, v});
  return out;
}

Graph build_join(const JoinSpec& spec) {
  if (spec.n1 < 0 || spec.n2 < 0 || spec.n3 < 0)
    throw std::invalid_argument("build_join: negative part size");
  int n = spec.n1 + spec.n2 + spec.n3;
  Graph g(n);
  for (int i = 0; i < spec.n1; ++i)
    for (int j = i + 1; j < spec.n1; ++j) g.add_edge(i, j);
  for (int i = 0; i < spec.n1 + spec.n2; ++i)
    for (int j = spec.n1 + spec.n2; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph build_threshold(int k, std::uint32_t seq) {
  if (k < 1 || k > 33) throw std::invalid_argument("build_threshold: need 1 <= k <= 33");
  if (k < 33 && (seq >> (k - 1)) != 0)
    throw std::invalid_argument("build_threshold: sequence has bits past vertex count");
  Graph g(k);
  for (int i = 1; i < k; ++i)
    if ((seq >> (i - 1)) & 1u)
      for (int j = 0; j < i; ++j) g.add_edge(i, j);
  return g;
}

Graph join_graphs(const Graph& a, const Graph& b) {
  if (a.n + b.n > 64) throw std::invalid_argument("join_graphs: too many vertices");
  Graph g(a.n + b.n);
  for (int u = 0; u < a.n; ++u) g.adj[u] = a.adj[u];
  for (int u = 0; u < b.n; ++u) g.adj[a.n + u] = b.adj[u] << a.n;
  for (int u = 0; u < a.n; ++u)
    for (int v = a.n; v < g.n; ++v) g.add_edge(u, v);
  return g;
}

bool is_threshold(const Graph& g) {
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      std::uint64_t punct = ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
      std::uint64_t a = g.adj[u] & punct;
      std::uint64_t b = g.adj[v] & punct;
      if ((a & ~b) != 0 && (b & ~a) != 0) return false;
    }
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// brute-force machinery.  Candidates are indexed by a single integer so the
// search space can be chunked across threads and every result reconstructed
// deterministically from its index.
// ---------------------------------------------------------------------------

struct Candidate {
  std::uint64_t id = 0;
  double spread = 0.0;
};

struct WorkerState {
  double best = -1.0;
  std::uint64_t best_id = 0;
  std::vector<Candidate> near;  // everything within `margin` of running best
};

constexpr double kCoMaxTol = 1e-9;
constexpr double kKeepMargin = 2e-9;  // superset of the co-maximizer band

void note_candidate(WorkerState& w, std::uint64_t id, double spread) {
  if (spread > w.best || (spread == w.best && id < w.best_id)) {
    w.best = spread;
    w.best_id = id;
  }
  if (spread >= w.best - kKeepMargin) {
    w.near.push_back({id, spread});
    if (w.near.size() > 4096) {
      std::erase_if(w.near, [&](const Candidate& c) { return c.spread < w.best - kKeepMargin; });
    }
  }
}

Graph graph_from_full_id(int n, const std::vector<std::pair<int, int>>& pairs,
                         std::uint64_t mask) {
  Graph g(n);
  for (std::size_t e = 0; e < pairs.size(); ++e)
    if ((mask >> e) & 1u) g.add_edge(pairs[e].first, pairs[e].second);
  return g;
}

Graph graph_from_threshold_id(int n, std::uint64_t id) {
  int half_bits = n - 2;  // seq1/seq2 bit budget per k1 (total is 2^(n-2))
  std::uint64_t per_k1 = std::uint64_t{1} << half_bits;
  int k1 = 1 + (int)(id / per_k1);
  std::uint64_t rem = id % per_k1;
  int k2 = n - k1;
  std::uint32_t s1 = (std::uint32_t)(rem >> (k2 - 1));
  std::uint32_t s2 = (std::uint32_t)(rem & ((std::uint64_t{1} << (k2 - 1)) - 1));
  return join_graphs(build_threshold(k1, s1), build_threshold(k2, s2));
}

}  // namespace

namespace detail {

double threshold_join_spread(int k1, std::uint32_t s1, int k2, std::uint32_t s2) {
  // Runs of equal creation type are twin classes (a dominating run is a set
  // of true twins, an isolated run false twins), and the join keeps them so.
  // The spectrum therefore splits into the symmetrized quotient over the runs
  // plus an extra -1 per surplus true twin and 0 per surplus false twin; the
  // extremes come from the quotient and those two constants.
  struct Run {
    bool dom;
    int size;
  };
  thread_local std::vector<Run> runs;
  thread_local std::vector<double> a, d, e;
  runs.clear();

  auto push_side = [&](int k, std::uint32_t seq) {
    bool cur = false;  // the seed vertex enters as isolated-type
    int size = 1;
    for (int i = 1; i < k; ++i) {
      bool dom = (seq >> (i - 1)) & 1u;
      if (dom == cur) {
        ++size;
      } else {
        runs.push_back({cur, size});
        cur = dom;
        size = 1;
      }
    }
    runs.push_back({cur, size});
  };
  push_side(k1, s1);
  int side1 = (int)runs.size();
  push_side(k2, s2);
  int r = (int)runs.size();

  static const std::array<double, 577> kSqrt = [] {
    std::array<double, 577> t{};
    for (int i = 0; i < 577; ++i) t[i] = std::sqrt((double)i);
    return t;
  }();

  a.assign((std::size_t)r * r, 0.0);
  bool has_true_twin = false, has_false_twin = false;
  for (int i = 0; i < r; ++i) {
    if (runs[i].size >= 2) (runs[i].dom ? has_true_twin : has_false_twin) = true;
    a[(std::size_t)i * r + i] = runs[i].dom ? runs[i].size - 1.0 : 0.0;
    for (int j = i + 1; j < r; ++j) {
      bool cross = (i < side1) != (j < side1);
      // within a side, a pair of classes is fully adjacent exactly when the
      // later one (creation order) is dominating
      bool adjacent = cross || runs[j].dom;
      if (adjacent) {
        double v = kSqrt[runs[i].size * runs[j].size];
        a[(std::size_t)i * r + j] = v;
        a[(std::size_t)j * r + i] = v;
      }
    }
  }

  auto [lo, hi] = spreadlab::detail::extreme_eigs_inplace(a, r, d, e);
  if (has_false_twin) lo = std::min(lo, 0.0);
  if (has_true_twin) lo = std::min(lo, -1.0);
  return hi - lo;
}

}  // namespace detail

BruteResult brute_force_max_spread(int n, BruteMode mode, int jobs) {
  std::uint64_t total;
  std::vector<std::pair<int, int>> pairs;
  if (mode == BruteMode::full) {
    if (n < 1 || n > 7) throw std::invalid_argument("brute_force_max_spread: full mode needs n <= 7");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    total = std::uint64_t{1} << pairs.size();
  } else {
    if (n < 2 || n > 24)
      throw std::invalid_argument("brute_force_max_spread: threshold_join mode needs 2 <= n <= 24");
    total = std::uint64_t(n - 1) << (n - 2);
  }

  if (jobs <= 0) jobs = (int)std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  if (total < 4096) jobs = 1;
  log_info("brute force: n=" + std::to_string(n) + " candidates=" + std::to_string(total) +
           " jobs=" + std::to_string(jobs));

  std::vector<WorkerState> states(jobs);
  auto work = [&](int t) {
    WorkerState& w = states[t];
    std::uint64_t begin = total * t / jobs, end = total * (t + 1) / jobs;
    std::vector<double> a((std::size_t)n * n), d, e;
    if (mode == BruteMode::full) {
      for (std::uint64_t mask = begin; mask < end; ++mask) {
        std::fill(a.begin(), a.end(), 0.0);
        std::uint64_t bits = mask;
        while (bits) {
          int ei = std::countr_zero(bits);
          bits &= bits - 1;
          auto [u, v] = pairs[ei];
          a[(std::size_t)u * n + v] = 1.0;
          a[(std::size_t)v * n + u] = 1.0;
        }
        auto [lo, hi] = detail::extreme_eigs_inplace(a, n, d, e);
        note_candidate(w, mask, hi - lo);
      }
    } else {
      std::uint64_t per_k1 = std::uint64_t{1} << (n - 2);
      for (std::uint64_t id = begin; id < end; ++id) {
        int k1 = 1 + (int)(id / per_k1);
        std::uint64_t rem = id % per_k1;
        int k2 = n - k1;
        std::uint32_t s1 = (std::uint32_t)(rem >> (k2 - 1));
        std::uint32_t s2 = (std::uint32_t)(rem & ((std::uint64_t{1} << (k2 - 1)) - 1));
        note_candidate(w, id, detail::threshold_join_spread(k1, s1, k2, s2));
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(work, t);
    for (auto& th : threads) th.join();
  }

  double best = -1.0;
  std::uint64_t best_id = 0;
  for (const WorkerState& w : states)
    if (w.best > best || (w.best == best && w.best_id < best_id)) {
      best = w.best;
      best_id = w.best_id;
    }

  auto materialize = [&](std::uint64_t id) {
    return (mode == BruteMode::full) ? graph_from_full_id(n, pairs, id)
                                     : graph_from_threshold_id(n, id);
  };

  BruteResult out;
  out.best = materialize(best_id);
  out.spread = extreme_eigs(out.best.adjacency_matrix()).spread;
  out.candidates = total;

  std::vector<int> best_seq = out.best.degree_sequence();
  std::set<std::vector<int>> seqs;
  for (const WorkerState& w : states)
    for (const Candidate& c : w.near)
      if (c.spread >= best - kCoMaxTol) {
        std::vector<int> seq = materialize(c.id).degree_sequence();
        if (seq != best_seq) seqs.insert(seq);
      }
  out.co_maximizers.assign(seqs.begin(), seqs.end());
  return out;
}

namespace {

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  Graph h((int)keep.size());
  for (int i = 0; i < h.n; ++i)
    for (int j = i + 1; j < h.n; ++j)
      if (g.has_edge(keep[i], keep[j])) h.add_edge(i, j);
  return h;
}

}  // namespace

StructureReport check_lemma21(const Graph& g, double tol) {
  if (!g.connected()) throw std::invalid_argument("check_lemma21: graph must be connected");
  SpectralPair p = extreme_eigs(g.adjacency_matrix());

  StructureReport rep;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      double prod = p.x[u] * p.x[v] - p.z[u] * p.z[v];
      if (std::fabs(prod) <= tol) {
        ++rep.indeterminate;
      } else if (g.has_edge(u, v)) {
        if (prod < 0.0) ++rep.adjacent_violations;
      } else {
        if (prod > 0.0) ++rep.nonadjacent_violations;
      }
    }

  std::vector<int> pside, nside;
  for (int u = 0; u < g.n; ++u) (p.z[u] >= 0.0 ? pside : nside).push_back(u);
  rep.p_size = (int)pside.size();
  rep.n_size = (int)nside.size();

  rep.join_confirmed = true;
  for (int u : pside)
    for (int v : nside)
      if (!g.has_edge(u, v)) rep.join_confirmed = false;

  rep.p_side_threshold = is_threshold(induced_subgraph(g, pside));
  rep.n_side_threshold = is_threshold(induced_subgraph(g, nside));
  return rep;
}

double ellipse_deviation(const Graph& g) {
  SpectralPair p = extreme_eigs(g.adjacency_matrix());
  double qmin = 0.0, qmax = 0.0;
  for (int u = 0; u < g.n; ++u) {
    double q = p.lambda_max * p.x[u] * p.x[u] - p.lambda_min * p.z[u] * p.z[u];
    if (u == 0 || q < qmin) qmin = q;
    if (u == 0 || q > qmax) qmax = q;
  }
  return qmax - qmin;
}

}  // namespace spreadlab
