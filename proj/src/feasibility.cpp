// Support-case programs over the seven-block pattern: the per-box interval
// narrowing test, the branch-and-prune eliminator over the search hypercube,
// and the plain-double residual the soundness tests use as a cross check.
//
// Soundness contract, relied on throughout: every narrowing step intersects a
// variable with a set that contains all values the program's equations allow
// given the other variables' current sets.  A genuine solution inside the box
// therefore never leaves any set, so an empty intersection refutes the whole
// box.  Fixed sweep counts and a fixed evaluation order make the test a
// deterministic, inclusion-monotone function of the box.
#include "spreadlab/feasibility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "spreadlab/util.hpp"

namespace spreadlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Narrowing sweeps per box.  One sweep rarely exposes the weight/entry
// interactions (the norm pass only pins the weights at the end of it); two
// catch most refutations; the third is cheap insurance on nearly-dead boxes.
constexpr int kSweeps = 3;

// ---------------------------------------------------------------------------
// per-block data

// f lives in [1, inf) on the looped blocks (1, 2, 5) and in [0, 1] elsewhere.
Interval f_region(int label) {
  const bool looped = label == 1 || label == 2 || label == 5;
  return looped ? Interval::make(1.0, kInf) : Interval::make(0.0, 1.0);
}

// g is positive on the first ladder (1..4) and negative on the mirror (5..7),
// with magnitude at least 1 exactly where f's is at most 1.
Interval g_region(int label) {
  switch (label) {
    case 1:
    case 2:
      return Interval::make(0.0, 1.0);
    case 3:
    case 4:
      return Interval::make(1.0, kInf);
    case 5:
      return Interval::make(-1.0, 0.0);
    default:
      return Interval::make(-kInf, -1.0);
  }
}

// Sign g keeps on each block; picks the branch when inverting g^2.
int g_orient(int label) { return label <= 4 ? +1 : -1; }

double spread_floor_lo() {
  static const double v = Interval::around(2.0 / std::sqrt(3.0)).lo;
  return v;
}

// ---------------------------------------------------------------------------
// narrowing context

struct Ctx {
  CaseState<IntervalSet> st;
  IntervalSet d;  // mu - nu, kept at or above the spread floor
  const char* what = nullptr;  // violated constraint once refuted
  int b1 = -1, b2 = -1;
};

std::string make_tag(const char* what, int b1, int b2) {
  std::string s = what ? what : "";
  if (b1 >= 0) {
    s += '[';
    s += std::to_string(b1);
    if (b2 >= 0) {
      s += ',';
      s += std::to_string(b2);
    }
    s += ']';
  }
  return s;
}

bool refute(Ctx& c, const char* what, int b1 = -1, int b2 = -1) {
  c.what = what;
  c.b1 = b1;
  c.b2 = b2;
  return false;
}

// dst := dst ∩ src; empty means the constraint named `what` cannot hold.
bool meet(Ctx& c, IntervalSet& dst, const IntervalSet& src, const char* what,
          int b1 = -1, int b2 = -1) {
  dst = intersect(dst, src);
  if (!dst.empty()) return true;
  return refute(c, what, b1, b2);
}

// num/den read as the relation x * den == num, for use inside narrowing
// expressions.  A denominator that is exactly {0} makes the relation a
// constraint on num alone: any x works when num can vanish, none otherwise.
// Plain division would return the empty set there and fake a refutation.
IntervalSet rel_div(const IntervalSet& num, const IntervalSet& den) {
  if (den.parts.size() == 1 && den.parts[0].lo == 0.0 && den.parts[0].hi == 0.0)
    return num.contains(0.0) ? IntervalSet::whole() : IntervalSet();
  return div(num, den);
}

IntervalSet signed_sqrt(const IntervalSet& x, int orient) {
  IntervalSet r = sqrt(x);
  return orient < 0 ? neg(r) : r;
}

// ---------------------------------------------------------------------------
// passes

// d = mu - nu with the 2/sqrt(3) floor applied, pushed back into both
// eigenvalues.  d's initial value carries the floor.
bool floor_pass(Ctx& c) {
  if (!meet(c, c.d, c.st.mu - c.st.nu, "spread floor")) return false;
  if (!meet(c, c.st.mu, c.st.nu + c.d, "spread floor")) return false;
  if (!meet(c, c.st.nu, c.st.mu - c.d, "spread floor")) return false;
  return true;
}

// Ladder pair whose restricted neighborhoods differ exactly by {j}: block j's
// entry squares are rational in a_j, block i's entries are known multiples of
// block j's.  Displays, each intersected forward and backward:
//   f_j^2 (p a_j + 2q) = (a_j + 2 nu) mu        with p = mu + nu, q = mu nu
//   g_j^2 (p a_j + 2q) = (a_j + 2 mu) nu
//   mu f_i = (mu + a_j) f_j
//   nu g_i = (nu + a_j) g_j
// and the sign facts p a_j + 2q <= 0, a_j + 2 nu <= 0 along the way.
bool squares_lower(Ctx& c, int i, int j) {
  auto& st = c.st;
  const int bi = i - 1, bj = j - 1;
  const IntervalSet p = st.mu + st.nu;
  const IntervalSet q = st.mu * st.nu;
  const IntervalSet neghalf(-kInf, 0.0);

  IntervalSet den = intersect(p * st.alpha[bj] + 2.0 * q, neghalf);
  if (den.empty()) return refute(c, "squares_lo denom", i, j);
  if (!meet(c, st.alpha[bj], rel_div(den - 2.0 * q, p), "squares_lo denom", i, j))
    return false;
  if (!meet(c, st.alpha[bj], neghalf - 2.0 * st.nu, "squares_lo numer", i, j))
    return false;

  const IntervalSet fj2 = rel_div((st.alpha[bj] + 2.0 * st.nu) * st.mu, den);
  if (!meet(c, st.f[bj], sqrt(fj2), "squares_lo f", j)) return false;
  IntervalSet s = square(st.f[bj]);
  if (!meet(c, st.alpha[bj], rel_div(2.0 * q * (1.0 - s), p * s - st.mu),
            "squares_lo f", j))
    return false;

  const IntervalSet gj2 = rel_div((st.alpha[bj] + 2.0 * st.mu) * st.nu, den);
  if (!meet(c, st.g[bj], signed_sqrt(gj2, g_orient(j)), "squares_lo g", j))
    return false;
  s = square(st.g[bj]);
  if (!meet(c, st.alpha[bj], rel_div(2.0 * q * (1.0 - s), p * s - st.nu),
            "squares_lo g", j))
    return false;

  if (!meet(c, st.f[bi], rel_div((st.mu + st.alpha[bj]) * st.f[bj], st.mu),
            "squares_lo f", i, j))
    return false;
  if (!meet(c, st.f[bj], rel_div(st.mu * st.f[bi], st.mu + st.alpha[bj]),
            "squares_lo f", i, j))
    return false;
  if (!meet(c, st.alpha[bj], rel_div(st.mu * (st.f[bi] - st.f[bj]), st.f[bj]),
            "squares_lo f", i, j))
    return false;

  if (!meet(c, st.g[bi], rel_div((st.nu + st.alpha[bj]) * st.g[bj], st.nu),
            "squares_lo g", i, j))
    return false;
  if (!meet(c, st.g[bj], rel_div(st.nu * st.g[bi], st.nu + st.alpha[bj]),
            "squares_lo g", i, j))
    return false;
  if (!meet(c, st.alpha[bj], rel_div(st.nu * (st.g[bi] - st.g[bj]), st.g[bj]),
            "squares_lo g", i, j))
    return false;
  return true;
}

// Mirror pair differing exactly by {i} (i carries the loop): block i's entry
// squares are rational in a_i via the reflected form p a_i - 2q (proved
// positive), and block j's entries are (1 - a_i/mu) resp. (1 - a_i/nu) times
// block i's.  Same treatment as squares_lower.
bool squares_upper(Ctx& c, int i, int j) {
  auto& st = c.st;
  const int bi = i - 1, bj = j - 1;
  const IntervalSet p = st.mu + st.nu;
  const IntervalSet q = st.mu * st.nu;
  const IntervalSet neghalf(-kInf, 0.0);
  const IntervalSet poshalf(0.0, kInf);

  IntervalSet den = intersect(p * st.alpha[bi] - 2.0 * q, poshalf);
  if (den.empty()) return refute(c, "squares_hi denom", i, j);
  if (!meet(c, st.alpha[bi], rel_div(den + 2.0 * q, p), "squares_hi denom", i, j))
    return false;
  if (!meet(c, st.alpha[bi], neghalf + 2.0 * st.mu, "squares_hi numer", i, j))
    return false;

  const IntervalSet fi2 = rel_div((st.alpha[bi] - 2.0 * st.nu) * st.mu, den);
  if (!meet(c, st.f[bi], sqrt(fi2), "squares_hi f", i)) return false;
  IntervalSet s = square(st.f[bi]);
  if (!meet(c, st.alpha[bi], rel_div(2.0 * q * (s - 1.0), p * s - st.mu),
            "squares_hi f", i))
    return false;

  const IntervalSet gi2 = rel_div((st.alpha[bi] - 2.0 * st.mu) * st.nu, den);
  if (!meet(c, st.g[bi], signed_sqrt(gi2, g_orient(i)), "squares_hi g", i))
    return false;
  s = square(st.g[bi]);
  if (!meet(c, st.alpha[bi], rel_div(2.0 * q * (s - 1.0), p * s - st.nu),
            "squares_hi g", i))
    return false;

  if (!meet(c, st.f[bj], rel_div((st.mu - st.alpha[bi]) * st.f[bi], st.mu),
            "squares_hi f", i, j))
    return false;
  if (!meet(c, st.f[bi], rel_div(st.mu * st.f[bj], st.mu - st.alpha[bi]),
            "squares_hi f", i, j))
    return false;
  if (!meet(c, st.alpha[bi], rel_div(st.mu * (st.f[bi] - st.f[bj]), st.f[bi]),
            "squares_hi f", i, j))
    return false;

  if (!meet(c, st.g[bj], rel_div((st.nu - st.alpha[bi]) * st.g[bi], st.nu),
            "squares_hi g", i, j))
    return false;
  if (!meet(c, st.g[bi], rel_div(st.nu * st.g[bj], st.nu - st.alpha[bi]),
            "squares_hi g", i, j))
    return false;
  if (!meet(c, st.alpha[bi], rel_div(st.nu * (st.g[bi] - st.g[bj]), st.g[bi]),
            "squares_hi g", i, j))
    return false;
  return true;
}

// Consecutive triple (i, j, k): the leading weight is rational in the middle
// one, and the trailing block's entries come from differencing the middle and
// trailing eigenvector rows (which differ exactly by block i's column):
//   mu f_k = mu f_j - a_i f_i        nu g_k = nu g_j - a_i g_i
bool triple_weight(Ctx& c, int i, int j, int k) {
  auto& st = c.st;
  const int bi = i - 1, bj = j - 1, bk = k - 1;
  const IntervalSet q = st.mu * st.nu;
  if (!meet(c, st.alpha[bi],
            rel_div(2.0 * square(q) * st.alpha[bj], F2(st.alpha[bj], st.mu, st.nu)),
            "triple a", i))
    return false;

  if (!meet(c, st.f[bk], st.f[bj] - rel_div(st.alpha[bi] * st.f[bi], st.mu),
            "triple f", j, k))
    return false;
  if (!meet(c, st.f[bj], st.f[bk] + rel_div(st.alpha[bi] * st.f[bi], st.mu),
            "triple f", j, k))
    return false;
  if (!meet(c, st.alpha[bi], rel_div(st.mu * (st.f[bj] - st.f[bk]), st.f[bi]),
            "triple f", j, k))
    return false;
  if (!meet(c, st.f[bi], rel_div(st.mu * (st.f[bj] - st.f[bk]), st.alpha[bi]),
            "triple f", j, k))
    return false;

  if (!meet(c, st.g[bk], st.g[bj] - rel_div(st.alpha[bi] * st.g[bi], st.nu),
            "triple g", j, k))
    return false;
  if (!meet(c, st.g[bj], st.g[bk] + rel_div(st.alpha[bi] * st.g[bi], st.nu),
            "triple g", j, k))
    return false;
  if (!meet(c, st.alpha[bi], rel_div(st.nu * (st.g[bj] - st.g[bk]), st.g[bi]),
            "triple g", j, k))
    return false;
  if (!meet(c, st.g[bi], rel_div(st.nu * (st.g[bj] - st.g[bk]), st.alpha[bi]),
            "triple g", j, k))
    return false;
  return true;
}

// Block 1's rows against block i's: mu f_1 = mu f_i + a_k f_k and the g twin.
// Shared by the dominated and gap variants below.
bool top_entries(Ctx& c, int i, int k) {
  auto& st = c.st;
  const int bi = i - 1, bk = k - 1;
  if (!meet(c, st.f[0], st.f[bi] + rel_div(st.alpha[bk] * st.f[bk], st.mu),
            "top f", 1, i))
    return false;
  if (!meet(c, st.f[bi], st.f[0] - rel_div(st.alpha[bk] * st.f[bk], st.mu),
            "top f", 1, i))
    return false;
  if (!meet(c, st.alpha[bk], rel_div(st.mu * (st.f[0] - st.f[bi]), st.f[bk]),
            "top f", 1, i))
    return false;
  if (!meet(c, st.f[bk], rel_div(st.mu * (st.f[0] - st.f[bi]), st.alpha[bk]),
            "top f", 1, i))
    return false;

  if (!meet(c, st.g[0], st.g[bi] + rel_div(st.alpha[bk] * st.g[bk], st.nu),
            "top g", 1, i))
    return false;
  if (!meet(c, st.g[bi], st.g[0] - rel_div(st.alpha[bk] * st.g[bk], st.nu),
            "top g", 1, i))
    return false;
  if (!meet(c, st.alpha[bk], rel_div(st.nu * (st.g[0] - st.g[bi]), st.g[bk]),
            "top g", 1, i))
    return false;
  if (!meet(c, st.g[bk], rel_div(st.nu * (st.g[0] - st.g[bi]), st.alpha[bk]),
            "top g", 1, i))
    return false;
  return true;
}

// Triple's end weight with block 1 active: a_k = a_j F2(a_j)^2 / F3(a_j).
bool top_dominated(Ctx& c, int i, int j, int k) {
  auto& st = c.st;
  const IntervalSet f2 = F2(st.alpha[j - 1], st.mu, st.nu);
  if (!meet(c, st.alpha[k - 1],
            rel_div(st.alpha[j - 1] * square(f2), F3(st.alpha[j - 1], st.mu, st.nu)),
            "top_dom a", k))
    return false;
  return top_entries(c, i, k);
}

// Same end weight when the middle rung is inactive: a_k = 2 a_i q^2 / F2(-a_i).
bool top_gap(Ctx& c, int i, int k) {
  auto& st = c.st;
  const IntervalSet q = st.mu * st.nu;
  if (!meet(c, st.alpha[k - 1],
            rel_div(2.0 * st.alpha[i - 1] * square(q),
                    F2(neg(st.alpha[i - 1]), st.mu, st.nu)),
            "top_gap a", k))
    return false;
  return top_entries(c, i, k);
}

// End weight with block 1 inactive: a_k = F4(a_j) / F3(a_j).  No entry
// displays; the eigenvector rows carry the rest.
bool top_undominated(Ctx& c, int j, int k) {
  auto& st = c.st;
  if (!meet(c, st.alpha[k - 1],
            rel_div(F4(st.alpha[j - 1], st.mu, st.nu),
                    F3(st.alpha[j - 1], st.mu, st.nu)),
            "top_free a", k))
    return false;
  return true;
}

// Blocks 4 and 7 split the mass left by the other active blocks; the split is
// pinned by the difference of rows 2 and 5 (which differ exactly in those two
// columns), read once through f and once through g:
//   a_4 (f_4 + f_7) = T f_7 - mu (f_2 - f_5)     T = 1 - sum of other weights
//   a_7 (f_4 + f_7) = T f_4 + mu (f_2 - f_5)
bool pair_split(Ctx& c, const CaseSpec& cs) {
  auto& st = c.st;
  IntervalSet t = IntervalSet::point(1.0);
  for (int l = 1; l <= kNumBlocks; ++l)
    if (cs.active(l) && l != 4 && l != 7) t = t - st.alpha[l - 1];

  const IntervalSet df = st.mu * (st.f[1] - st.f[4]);
  const IntervalSet denf = st.f[3] + st.f[6];
  if (!meet(c, st.alpha[3], rel_div(t * st.f[6] - df, denf), "split_f a", 4))
    return false;
  if (!meet(c, st.alpha[6], rel_div(t * st.f[3] + df, denf), "split_f a", 7))
    return false;

  const IntervalSet dg = st.nu * (st.g[1] - st.g[4]);
  const IntervalSet deng = st.g[3] + st.g[6];
  if (!meet(c, st.alpha[3], rel_div(t * st.g[6] - dg, deng), "split_g a", 4))
    return false;
  if (!meet(c, st.alpha[6], rel_div(t * st.g[3] + dg, deng), "split_g a", 7))
    return false;
  return true;
}

bool apply_step(Ctx& c, const CaseSpec& cs, const ChainStep& s) {
  using R = ChainStep::Rule;
  switch (s.rule) {
    case R::kSquaresLower:
      return squares_lower(c, s.i, s.j);
    case R::kSquaresUpper:
      return squares_upper(c, s.i, s.j);
    case R::kTripleWeight:
      return triple_weight(c, s.i, s.j, s.k);
    case R::kTopWeightDominated:
      return top_dominated(c, s.i, s.j, s.k);
    case R::kTopWeightGap:
      return top_gap(c, s.i, s.k);
    case R::kTopWeightUndominated:
      return top_undominated(c, s.j, s.k);
    case R::kPairSplit:
      return pair_split(c, cs);
  }
  throw std::logic_error("unhandled chain rule");
}

// Eigenvector rows: lam e_k = sum over active neighbors l of a_l e_l, where
// (e, lam) is (f, mu) or (g, nu).  Each row narrows the row entry, the
// eigenvalue, every term, and through each term its two factors.  Partial
// sums use the pass-start terms; any enclosure of the complement works.
bool eigen_rows(Ctx& c, const CaseSpec& cs, std::array<IntervalSet, kNumBlocks>& e,
                IntervalSet& lam, const char* what) {
  for (int k = 1; k <= kNumBlocks; ++k) {
    if (!cs.active(k)) continue;
    int lab[kNumBlocks];
    int n = 0;
    for (int l = 1; l <= kNumBlocks; ++l)
      if (cs.active(l) && pattern_has_edge(k - 1, l - 1)) lab[n++] = l;

    IntervalSet term[kNumBlocks];
    for (int t = 0; t < n; ++t)
      term[t] = c.st.alpha[lab[t] - 1] * e[lab[t] - 1];
    IntervalSet pre[kNumBlocks + 1], suf[kNumBlocks + 1];
    pre[0] = IntervalSet::point(0.0);
    suf[n] = IntervalSet::point(0.0);
    for (int t = 0; t < n; ++t) pre[t + 1] = pre[t] + term[t];
    for (int t = n - 1; t >= 0; --t) suf[t] = term[t] + suf[t + 1];

    if (!meet(c, e[k - 1], rel_div(pre[n], lam), what, k)) return false;
    if (!meet(c, lam, rel_div(pre[n], e[k - 1]), what, k)) return false;

    const IntervalSet lhs = lam * e[k - 1];
    for (int t = 0; t < n; ++t) {
      const int l = lab[t];
      const IntervalSet want = lhs - (pre[t] + suf[t + 1]);
      const IntervalSet tt = intersect(term[t], want);
      if (tt.empty()) return refute(c, what, k, l);
      if (!meet(c, c.st.alpha[l - 1], rel_div(tt, e[l - 1]), what, k, l))
        return false;
      if (!meet(c, e[l - 1], rel_div(tt, c.st.alpha[l - 1]), what, k, l))
        return false;
    }
  }
  return true;
}

// One of the three normalizations: sum a = 1 (kind 0), sum a f^2 = 1 (1),
// sum a g^2 = 1 (2).  Every term is narrowed against the mass the others
// leave over, then pulled apart into its factors.
bool norm_sum(Ctx& c, const CaseSpec& cs, int kind) {
  auto& st = c.st;
  const char* what = kind == 0 ? "norm a" : kind == 1 ? "norm f" : "norm g";
  int lab[kNumBlocks];
  int n = 0;
  for (int l = 1; l <= kNumBlocks; ++l)
    if (cs.active(l)) lab[n++] = l;

  IntervalSet term[kNumBlocks], entsq[kNumBlocks];
  for (int t = 0; t < n; ++t) {
    const int b = lab[t] - 1;
    if (kind == 0) {
      term[t] = st.alpha[b];
    } else {
      entsq[t] = square(kind == 1 ? st.f[b] : st.g[b]);
      term[t] = st.alpha[b] * entsq[t];
    }
  }
  IntervalSet pre[kNumBlocks + 1], suf[kNumBlocks + 1];
  pre[0] = IntervalSet::point(0.0);
  suf[n] = IntervalSet::point(0.0);
  for (int t = 0; t < n; ++t) pre[t + 1] = pre[t] + term[t];
  for (int t = n - 1; t >= 0; --t) suf[t] = term[t] + suf[t + 1];

  for (int t = 0; t < n; ++t) {
    const int l = lab[t];
    const int b = l - 1;
    const IntervalSet want = 1.0 - (pre[t] + suf[t + 1]);
    if (kind == 0) {
      if (!meet(c, st.alpha[b], want, what, l)) return false;
      continue;
    }
    const IntervalSet tt = intersect(term[t], want);
    if (tt.empty()) return refute(c, what, l);
    if (!meet(c, st.alpha[b], rel_div(tt, entsq[t]), what, l)) return false;
    if (kind == 1) {
      if (!meet(c, st.f[b], sqrt(rel_div(tt, st.alpha[b])), what, l))
        return false;
    } else {
      if (!meet(c, st.g[b], signed_sqrt(rel_div(tt, st.alpha[b]), g_orient(l)),
                what, l))
        return false;
    }
  }
  return true;
}

// Per-block identity mu f_k^2 - nu g_k^2 = mu - nu, shared through the
// floored spread variable d and pushed back into every participant.
bool ellipse_pass(Ctx& c, const CaseSpec& cs) {
  auto& st = c.st;
  for (int k = 1; k <= kNumBlocks; ++k) {
    if (!cs.active(k)) continue;
    const int b = k - 1;
    IntervalSet fs = square(st.f[b]);
    IntervalSet gs = square(st.g[b]);
    if (!meet(c, c.d, st.mu * fs - st.nu * gs, "ellipse d", k)) return false;
    if (!meet(c, st.f[b], sqrt(rel_div(c.d + st.nu * gs, st.mu)), "ellipse f", k))
      return false;
    fs = square(st.f[b]);
    if (!meet(c, st.g[b],
              signed_sqrt(rel_div(st.mu * fs - c.d, st.nu), g_orient(k)),
              "ellipse g", k))
      return false;
    gs = square(st.g[b]);
    if (!meet(c, st.mu, rel_div(c.d + st.nu * gs, fs), "ellipse mu", k))
      return false;
    if (!meet(c, st.nu, rel_div(st.mu * fs - c.d, gs), "ellipse nu", k))
      return false;
  }
  return true;
}

// Pairwise products over distinct active blocks: joined pairs need
// f_k f_l >= g_k g_l, unjoined pairs the reverse.  Pure tests -- their
// narrowing value is negligible next to their count.
bool sign_pass(Ctx& c, const CaseSpec& cs) {
  const IntervalSet poshalf(0.0, kInf);
  const IntervalSet neghalf(-kInf, 0.0);
  for (int k = 1; k <= kNumBlocks; ++k) {
    if (!cs.active(k)) continue;
    for (int l = k + 1; l <= kNumBlocks; ++l) {
      if (!cs.active(l)) continue;
      const IntervalSet s =
          c.st.f[k - 1] * c.st.f[l - 1] - c.st.g[k - 1] * c.st.g[l - 1];
      const bool joined = pattern_has_edge(k - 1, l - 1);
      if (intersect(s, joined ? poshalf : neghalf).empty())
        return refute(c, "sign", k, l);
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// public narrowing entry points

bool is_feasible(const CaseSpec& cs, const SearchBox& box, std::string* why) {
  Ctx c;
  c.st.support = cs.support;
  for (int l = 1; l <= kNumBlocks; ++l) {
    if (!cs.active(l)) continue;
    c.st.alpha[l - 1] = IntervalSet(0.0, 1.0);
    c.st.f[l - 1] = IntervalSet(f_region(l));
    c.st.g[l - 1] = IntervalSet(g_region(l));
  }
  c.st.mu = IntervalSet(box.mu);
  c.st.nu = IntervalSet(box.nu);
  c.d = IntervalSet(Interval::make(spread_floor_lo(), kInf));

  bool ok =
      meet(c, c.st.alpha[cs.wi - 1], IntervalSet(box.a_i), "box a", cs.wi) &&
      meet(c, c.st.alpha[cs.wj - 1], IntervalSet(box.a_j), "box a", cs.wj);
  for (int s = 0; ok && s < kSweeps; ++s) {
    ok = floor_pass(c);
    for (const ChainStep& step : cs.chain) ok = ok && apply_step(c, cs, step);
    ok = ok && eigen_rows(c, cs, c.st.f, c.st.mu, "eigen f") &&
         eigen_rows(c, cs, c.st.g, c.st.nu, "eigen g") && norm_sum(c, cs, 0) &&
         norm_sum(c, cs, 1) && norm_sum(c, cs, 2) && ellipse_pass(c, cs);
  }
  ok = ok && sign_pass(c, cs);
  if (!ok && why) *why = make_tag(c.what, c.b1, c.b2);
  return ok;
}

IntervalSet ladder_f_square(const IntervalSet& a_j, const IntervalSet& mu,
                            const IntervalSet& nu) {
  return rel_div((a_j + 2.0 * nu) * mu, F1(a_j, mu, nu));
}

IntervalSet ladder_g_square(const IntervalSet& a_j, const IntervalSet& mu,
                            const IntervalSet& nu) {
  return rel_div((a_j + 2.0 * mu) * nu, F1(a_j, mu, nu));
}

// ---------------------------------------------------------------------------
// case table

namespace {

ChainStep sq_lo(int i, int j) { return {ChainStep::Rule::kSquaresLower, i, j, 0}; }
ChainStep sq_hi(int i, int j) { return {ChainStep::Rule::kSquaresUpper, i, j, 0}; }
ChainStep triple(int i, int j, int k) {
  return {ChainStep::Rule::kTripleWeight, i, j, k};
}
ChainStep top_dom(int i, int j, int k) {
  return {ChainStep::Rule::kTopWeightDominated, i, j, k};
}
ChainStep top_gap(int i, int k) {
  return {ChainStep::Rule::kTopWeightGap, i, 0, k};
}
ChainStep top_free(int i, int j, int k) {
  return {ChainStep::Rule::kTopWeightUndominated, i, j, k};
}
ChainStep split24_57() { return {ChainStep::Rule::kPairSplit, 0, 0, 0}; }

CaseSpec mk(const char* name, int wi, int wj, std::vector<ChainStep> chain) {
  CaseSpec cs;
  cs.name = name;
  for (const char ch : std::string(name)) {
    if (ch == '|') continue;
    if (ch < '1' || ch > '7') throw std::logic_error("bad case name");
    cs.support |= static_cast<std::uint8_t>(1u << (ch - '1'));
  }
  cs.wi = wi;
  cs.wj = wj;
  cs.chain = std::move(chain);
  return cs;
}

// Neighborhood of `label` restricted to the case support, as a bitmask.
std::uint8_t restricted_nbrs(const CaseSpec& cs, int label) {
  std::uint8_t m = 0;
  for (int l = 1; l <= kNumBlocks; ++l)
    if (cs.active(l) && pattern_has_edge(label - 1, l - 1))
      m |= static_cast<std::uint8_t>(1u << (l - 1));
  return m;
}

// Every chain rule has a structural hypothesis (which rows must coincide up
// to which columns).  Checked once at table construction so a typo in the
// data below cannot silently produce unsound narrowings.
void validate(const CaseSpec& cs) {
  if (!(cs.active(cs.wi) && cs.wi >= 1 && cs.wi <= 4))
    throw std::logic_error(cs.name + ": bad first search weight");
  if (!(cs.active(cs.wj) && cs.wj >= 5 && cs.wj <= 7))
    throw std::logic_error(cs.name + ": bad second search weight");
  const auto bit = [](int l) { return static_cast<std::uint8_t>(1u << (l - 1)); };
  for (const ChainStep& s : cs.chain) {
    using R = ChainStep::Rule;
    switch (s.rule) {
      case R::kSquaresLower:
        if (!cs.active(s.i) || !cs.active(s.j) ||
            restricted_nbrs(cs, s.i) !=
                (restricted_nbrs(cs, s.j) | bit(s.j)) ||
            (restricted_nbrs(cs, s.j) & bit(s.j)))
          throw std::logic_error(cs.name + ": squares_lo hypothesis");
        break;
      case R::kSquaresUpper:
        if (!cs.active(s.i) || !cs.active(s.j) ||
            restricted_nbrs(cs, s.i) !=
                (restricted_nbrs(cs, s.j) | bit(s.i)) ||
            (restricted_nbrs(cs, s.j) & bit(s.i)))
          throw std::logic_error(cs.name + ": squares_hi hypothesis");
        break;
      case R::kTripleWeight:
        if (!((s.i == 2 && s.j == 3 && s.k == 4) ||
              (s.i == 5 && s.j == 6 && s.k == 7)) ||
            !cs.active(s.i) || !cs.active(s.j) || !cs.active(s.k))
          throw std::logic_error(cs.name + ": triple hypothesis");
        break;
      case R::kTopWeightDominated:
        if (!cs.active(1) || !cs.active(s.i) || !cs.active(s.j) ||
            !cs.active(s.k) ||
            !((s.i == 2 && s.j == 3 && s.k == 4) ||
              (s.i == 5 && s.j == 6 && s.k == 7)))
          throw std::logic_error(cs.name + ": top_dom hypothesis");
        break;
      case R::kTopWeightGap:
        if (!cs.active(1) || !cs.active(s.i) || !cs.active(s.k) ||
            !((s.i == 2 && s.k == 4 && !cs.active(3)) ||
              (s.i == 5 && s.k == 7 && !cs.active(6))))
          throw std::logic_error(cs.name + ": top_gap hypothesis");
        break;
      case R::kTopWeightUndominated:
        if (cs.active(1) || !cs.active(s.i) || !cs.active(s.j) ||
            !cs.active(s.k) ||
            !((s.i == 2 && s.j == 3 && s.k == 4 && cs.active(7)) ||
              (s.i == 5 && s.j == 6 && s.k == 7 && cs.active(4))))
          throw std::logic_error(cs.name + ": top_free hypothesis");
        break;
      case R::kPairSplit:
        if (!cs.active(2) || !cs.active(4) || !cs.active(5) || !cs.active(7))
          throw std::logic_error(cs.name + ": pair_split hypothesis");
        break;
    }
  }
}

std::array<CaseSpec, 17> build_case_table() {
  std::array<CaseSpec, 17> t = {
      mk("1|57", 1, 5, {sq_hi(5, 7), top_gap(5, 7)}),
      mk("24|57", 2, 5, {sq_hi(2, 4), sq_hi(5, 7), split24_57()}),
      mk("1|24|57", 2, 5,
         {sq_hi(2, 4), top_gap(2, 4), sq_hi(5, 7), top_gap(5, 7)}),
      mk("1|234|57", 3, 5,
         {sq_lo(2, 3), triple(2, 3, 4), top_dom(2, 3, 4), sq_hi(5, 7),
          top_gap(5, 7)}),
      mk("4|57", 4, 5, {sq_hi(5, 7)}),
      mk("1|4|57", 4, 5, {sq_hi(5, 7), top_gap(5, 7)}),
      mk("1|567", 1, 6, {sq_lo(5, 6), triple(5, 6, 7), top_dom(5, 6, 7)}),
      mk("24|567", 2, 6,
         {sq_hi(2, 4), sq_lo(5, 6), triple(5, 6, 7), top_free(5, 6, 7),
          split24_57()}),
      mk("1|24|567", 2, 6,
         {sq_hi(2, 4), top_gap(2, 4), sq_lo(5, 6), triple(5, 6, 7),
          top_dom(5, 6, 7)}),
      mk("234|567", 3, 6,
         {sq_lo(2, 3), triple(2, 3, 4), top_free(2, 3, 4), sq_lo(5, 6),
          triple(5, 6, 7), top_free(5, 6, 7)}),
      mk("1|234|567", 3, 6,
         {sq_lo(2, 3), triple(2, 3, 4), top_dom(2, 3, 4), sq_lo(5, 6),
          triple(5, 6, 7), top_dom(5, 6, 7)}),
      mk("4|567", 4, 6, {sq_lo(5, 6), triple(5, 6, 7), top_free(5, 6, 7)}),
      mk("1|4|567", 4, 6, {sq_lo(5, 6), triple(5, 6, 7), top_dom(5, 6, 7)}),
      mk("1|7", 1, 7, {sq_lo(1, 7)}),
      mk("1|24|7", 2, 7, {sq_hi(2, 4), top_gap(2, 4), sq_lo(1, 7)}),
      mk("1|234|7", 3, 7,
         {sq_lo(2, 3), triple(2, 3, 4), top_dom(2, 3, 4), sq_lo(1, 7)}),
      mk("1|4|7", 4, 7, {sq_lo(1, 7)}),
  };
  for (const CaseSpec& cs : t) validate(cs);
  return t;
}

}  // namespace

const std::array<CaseSpec, 17>& case_table() {
  static const std::array<CaseSpec, 17> t = build_case_table();
  return t;
}

const CaseSpec& find_case(std::string_view name) {
  std::string digits;
  for (const char ch : name)
    if (ch != '|') digits += ch;
  for (const CaseSpec& cs : case_table()) {
    std::string have;
    for (const char ch : cs.name)
      if (ch != '|') have += ch;
    if (have == digits) return cs;
  }
  throw std::invalid_argument("unknown support case: " + std::string(name));
}

// ---------------------------------------------------------------------------
// search boxes and the grid

SearchBox SearchBox::whole_domain() {
  SearchBox b;
  b.a_i = Interval::make(0.0, 1.0);
  b.a_j = Interval::make(0.0, 1.0);
  b.mu = Interval::make(0.65, 1.0);
  b.nu = Interval::make(-0.5, -0.15);
  return b;
}

std::string to_json(const SearchBox& box) {
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "{\"a_i\":[%.17g,%.17g],\"a_j\":[%.17g,%.17g],"
                "\"mu\":[%.17g,%.17g],\"nu\":[%.17g,%.17g],"
                "\"depth\":%d,\"split_dim\":%d}",
                box.a_i.lo, box.a_i.hi, box.a_j.lo, box.a_j.hi, box.mu.lo,
                box.mu.hi, box.nu.lo, box.nu.hi, box.depth, box.split_dim);
  return buf;
}

namespace {

// Cell edges for one axis: cells of width 1/g, endpoints shared exactly so
// adjacent cells cover the line between them.  llround, not ceil: the width
// times g is an integer up to roundoff, and ceil would turn 7 + one ulp
// into 8 cells.
std::vector<double> axis_edges(double lo, double hi, int g) {
  if (g < 1) throw std::invalid_argument("grid must be positive");
  const double w = hi - lo;
  const long n = std::max(1L, std::lround(w * g));
  std::vector<double> e(static_cast<size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) e[static_cast<size_t>(k)] = lo + w * static_cast<double>(k) / static_cast<double>(n);
  e.front() = lo;
  e.back() = hi;
  return e;
}

Interval& box_dim(SearchBox& b, int d) {
  switch (d) {
    case 0:
      return b.a_i;
    case 1:
      return b.a_j;
    case 2:
      return b.mu;
    default:
      return b.nu;
  }
}

}  // namespace

std::vector<SearchBox> seed_boxes(const GridSpec& grid) {
  const SearchBox dom = SearchBox::whole_domain();
  const auto ai = axis_edges(dom.a_i.lo, dom.a_i.hi, grid.g_ai);
  const auto aj = axis_edges(dom.a_j.lo, dom.a_j.hi, grid.g_aj);
  const auto mu = axis_edges(dom.mu.lo, dom.mu.hi, grid.g_mu);
  const auto nu = axis_edges(dom.nu.lo, dom.nu.hi, grid.g_nu);
  std::vector<SearchBox> out;
  out.reserve((ai.size() - 1) * (aj.size() - 1) * (mu.size() - 1) *
              (nu.size() - 1));
  for (size_t a = 0; a + 1 < ai.size(); ++a)
    for (size_t b = 0; b + 1 < aj.size(); ++b)
      for (size_t m = 0; m + 1 < mu.size(); ++m)
        for (size_t v = 0; v + 1 < nu.size(); ++v) {
          SearchBox box;
          box.a_i = Interval::make(ai[a], ai[a + 1]);
          box.a_j = Interval::make(aj[b], aj[b + 1]);
          box.mu = Interval::make(mu[m], mu[m + 1]);
          box.nu = Interval::make(nu[v], nu[v + 1]);
          out.push_back(box);
        }
  return out;
}

// ---------------------------------------------------------------------------
// branch and prune

namespace {

struct SeedResult {
  std::vector<SearchBox> survivors;
  std::map<std::string, long> refutations;
  long boxes = 0;
  int max_depth = 0;
};

}  // namespace

EliminationReport eliminate_case(const CaseSpec& cs, int max_depth,
                                 const EliminateOptions& opt) {
  if (max_depth < 0 || max_depth > 64)
    throw std::invalid_argument("depth cap must be in [0, 64]");
  const double t0 = now_seconds();

  const std::vector<SearchBox> seeds =
      opt.seeds ? *opt.seeds : seed_boxes(opt.grid);
  const int n = static_cast<int>(seeds.size());
  int jobs = opt.jobs;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, std::max(1, n)));

  std::vector<SeedResult> results(static_cast<size_t>(n));
  std::vector<char> done(static_cast<size_t>(n), 0);
  std::mutex mtx;  // guards done[] and the checkpoint clock
  double last_cp = t0;

  // Frontier snapshot: full cells of unfinished seeds (coarse but sound --
  // restarting them loses only their partial progress) plus all survivors
  // found so far.  The caller's own live stack, when given, stands in for
  // its seed's cell.
  auto snapshot = [&](int self, const std::vector<SearchBox>* stack,
                      const SeedResult* mine) {
    std::vector<SearchBox> snap;
    {
      std::lock_guard<std::mutex> lk(mtx);
      const double t = now_seconds();
      if (t - last_cp < opt.checkpoint_period_sec) return;
      last_cp = t;
      for (int i = 0; i < n; ++i) {
        if (i == self) continue;
        if (!done[static_cast<size_t>(i)]) {
          snap.push_back(seeds[static_cast<size_t>(i)]);
        } else {
          const auto& sv = results[static_cast<size_t>(i)].survivors;
          snap.insert(snap.end(), sv.begin(), sv.end());
        }
      }
      if (stack) snap.insert(snap.end(), stack->begin(), stack->end());
      if (mine)
        snap.insert(snap.end(), mine->survivors.begin(), mine->survivors.end());
    }
    opt.checkpoint(snap);  // outside the lock; may hit the filesystem
  };

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= n) return;
      SeedResult& out = results[static_cast<size_t>(s)];
      std::vector<SearchBox> stack{seeds[static_cast<size_t>(s)]};
      long since_poll = 0;
      while (!stack.empty()) {
        SearchBox b = stack.back();
        stack.pop_back();
        ++out.boxes;
        out.max_depth = std::max(out.max_depth, b.depth);
        std::string why;
        if (!is_feasible(cs, b, &why)) {
          ++out.refutations[why];
        } else if (b.depth >= max_depth) {
          out.survivors.push_back(b);
        } else {
          SearchBox hi = b;
          Interval& src = box_dim(b, b.split_dim);
          const double mid = src.mid();
          if (!(mid > src.lo && mid < src.hi)) {
            // degenerate width (possible only with point-like caller seeds):
            // nothing left to split, keep the box as a survivor
            out.survivors.push_back(b);
          } else {
            Interval& dst = box_dim(hi, b.split_dim);
            src = Interval::make(src.lo, mid);
            dst = Interval::make(mid, dst.hi);
            hi.depth = b.depth + 1;
            hi.split_dim = (b.split_dim + 1) & 3;
            b.depth = hi.depth;
            b.split_dim = hi.split_dim;
            stack.push_back(hi);  // lower half pops first
            stack.push_back(b);
          }
        }
        if (opt.checkpoint && ++since_poll >= 4096) {
          since_poll = 0;
          snapshot(s, &stack, &out);
        }
      }
      {
        std::lock_guard<std::mutex> lk(mtx);
        done[static_cast<size_t>(s)] = 1;
      }
      if (opt.checkpoint) snapshot(-1, nullptr, nullptr);
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  EliminationReport rep;
  rep.case_name = cs.name;
  for (const SeedResult& r : results) {
    rep.boxes_processed += r.boxes;
    rep.max_depth_reached = std::max(rep.max_depth_reached, r.max_depth);
    rep.surviving_boxes.insert(rep.surviving_boxes.end(), r.survivors.begin(),
                               r.survivors.end());
    for (const auto& [tag, cnt] : r.refutations) rep.refutations[tag] += cnt;
  }
  rep.status = rep.surviving_boxes.empty()
                   ? EliminationReport::Status::eliminated
                   : EliminationReport::Status::depth_exhausted;
  rep.wall_time_sec = now_seconds() - t0;

  if (log_level() >= 1) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "case %s: %s, %ld boxes, %zu survivors, %.1fs",
                  cs.name.c_str(),
                  rep.status == EliminationReport::Status::eliminated
                      ? "eliminated"
                      : "depth exhausted",
                  rep.boxes_processed, rep.surviving_boxes.size(),
                  rep.wall_time_sec);
    log_info(buf);
  }
  return rep;
}

std::vector<EliminationReport> verify_all(int max_depth, int jobs) {
  std::vector<EliminationReport> out;
  out.reserve(case_table().size());
  EliminateOptions opt;
  opt.jobs = jobs;
  for (const CaseSpec& cs : case_table()) out.push_back(eliminate_case(cs, max_depth, opt));
  return out;
}

bool survivors_are_expected(const std::vector<EliminationReport>& reports) {
  bool seen17 = false, seen457 = false;
  for (const EliminationReport& r : reports) {
    const bool gone = r.status == EliminationReport::Status::eliminated;
    if (r.case_name == "1|7") {
      if (gone) return false;
      seen17 = true;
    } else if (r.case_name == "4|57") {
      if (gone) return false;
      seen457 = true;
    } else if (!gone) {
      return false;
    }
  }
  return seen17 && seen457;
}

// ---------------------------------------------------------------------------
// plain-double residual

namespace {

// Derived configuration at a parameter point, filled the same way the
// interval chain fills its sets; conflicting derivations and unsatisfiable
// steps charge the residual instead of overwriting.
struct PointState {
  std::array<double, kNumBlocks> a{}, f{}, g{};
  std::array<bool, kNumBlocks> ha{}, hf{}, hg{};
  double mu = 0.0, nu = 0.0, res = 0.0;

  void bump(double v) { res = std::max(res, v); }
  double root(double x) {
    if (x < 0.0) {
      bump(-x);
      return 0.0;
    }
    return std::sqrt(x);
  }
  // First write wins; later routes to the same slot are consistency checks.
  void set(std::array<double, kNumBlocks>& arr, std::array<bool, kNumBlocks>& has,
           int label, double v) {
    const int b = label - 1;
    if (has[b]) {
      bump(std::abs(arr[b] - v));
    } else {
      arr[b] = v;
      has[b] = true;
    }
  }
  void seta(int l, double v) { set(a, ha, l, v); }
  void setf(int l, double v) { set(f, hf, l, v); }
  void setg(int l, double v) { set(g, hg, l, v); }
  // Quotients charge degenerate denominators rather than spreading NaN.
  double quot(double num, double den) {
    if (den == 0.0) {
      bump(1.0);
      return 0.0;
    }
    return num / den;
  }
};

void run_chain_double(const CaseSpec& cs, PointState& p) {
  using R = ChainStep::Rule;
  const double q = p.mu * p.nu;
  for (const ChainStep& s : cs.chain) {
    switch (s.rule) {
      case R::kSquaresLower: {
        const double aj = p.a[s.j - 1];
        const double den = F1(aj, p.mu, p.nu);
        p.bump(std::max(0.0, den));
        p.bump(std::max(0.0, aj + 2.0 * p.nu));
        p.setf(s.j, p.root(p.quot((aj + 2.0 * p.nu) * p.mu, den)));
        p.setg(s.j, g_orient(s.j) * p.root(p.quot((aj + 2.0 * p.mu) * p.nu, den)));
        p.setf(s.i, (1.0 + aj / p.mu) * p.f[s.j - 1]);
        p.setg(s.i, (1.0 + aj / p.nu) * p.g[s.j - 1]);
        break;
      }
      case R::kSquaresUpper: {
        const double ai = p.a[s.i - 1];
        const double den = -F1(-ai, p.mu, p.nu);
        p.bump(std::max(0.0, -den));
        p.bump(std::max(0.0, ai - 2.0 * p.mu));
        p.setf(s.i, p.root(p.quot((ai - 2.0 * p.nu) * p.mu, den)));
        p.setg(s.i, g_orient(s.i) * p.root(p.quot((ai - 2.0 * p.mu) * p.nu, den)));
        p.setf(s.j, (1.0 - ai / p.mu) * p.f[s.i - 1]);
        p.setg(s.j, (1.0 - ai / p.nu) * p.g[s.i - 1]);
        break;
      }
      case R::kTripleWeight: {
        const double aj = p.a[s.j - 1];
        p.seta(s.i, p.quot(2.0 * q * q * aj, F2(aj, p.mu, p.nu)));
        const double ai = p.a[s.i - 1];
        p.setf(s.k, p.f[s.j - 1] - ai * p.f[s.i - 1] / p.mu);
        p.setg(s.k, p.g[s.j - 1] - ai * p.g[s.i - 1] / p.nu);
        break;
      }
      case R::kTopWeightDominated: {
        const double aj = p.a[s.j - 1];
        const double f2 = F2(aj, p.mu, p.nu);
        p.seta(s.k, p.quot(aj * f2 * f2, F3(aj, p.mu, p.nu)));
        const double ak = p.a[s.k - 1];
        p.setf(1, p.f[s.i - 1] + ak * p.f[s.k - 1] / p.mu);
        p.setg(1, p.g[s.i - 1] + ak * p.g[s.k - 1] / p.nu);
        break;
      }
      case R::kTopWeightGap: {
        const double ai = p.a[s.i - 1];
        p.seta(s.k, p.quot(2.0 * ai * q * q, F2(-ai, p.mu, p.nu)));
        const double ak = p.a[s.k - 1];
        p.setf(1, p.f[s.i - 1] + ak * p.f[s.k - 1] / p.mu);
        p.setg(1, p.g[s.i - 1] + ak * p.g[s.k - 1] / p.nu);
        break;
      }
      case R::kTopWeightUndominated: {
        const double aj = p.a[s.j - 1];
        p.seta(s.k, p.quot(F4(aj, p.mu, p.nu), F3(aj, p.mu, p.nu)));
        break;
      }
      case R::kPairSplit: {
        double t = 1.0;
        for (int l = 1; l <= kNumBlocks; ++l)
          if (cs.active(l) && l != 4 && l != 7) t -= p.a[l - 1];
        const double df = p.mu * (p.f[1] - p.f[4]);
        const double denf = p.f[3] + p.f[6];
        p.seta(4, p.quot(t * p.f[6] - df, denf));
        p.seta(7, p.quot(t * p.f[3] + df, denf));
        const double dg = p.nu * (p.g[1] - p.g[4]);
        const double deng = p.g[3] + p.g[6];
        p.seta(4, p.quot(t * p.g[6] - dg, deng));
        p.seta(7, p.quot(t * p.g[3] + dg, deng));
        break;
      }
    }
  }
}

double region_dist(double x, const Interval& r) {
  double d = 0.0;
  if (x < r.lo) d = r.lo - x;
  if (x > r.hi) d = std::max(d, x - r.hi);
  return d;
}

}  // namespace

double point_residual(const CaseSpec& cs, double a_i, double a_j, double mu,
                      double nu) {
  PointState p;
  p.mu = mu;
  p.nu = nu;
  p.seta(cs.wi, a_i);
  p.seta(cs.wj, a_j);
  run_chain_double(cs, p);

  // at most one weight is left to the normalization
  {
    int missing = 0, which = 0;
    double sum = 0.0;
    for (int l = 1; l <= kNumBlocks; ++l) {
      if (!cs.active(l)) continue;
      if (p.ha[l - 1]) {
        sum += p.a[l - 1];
      } else {
        ++missing;
        which = l;
      }
    }
    if (missing > 1)
      throw std::logic_error(cs.name + ": chain leaves weights undetermined");
    if (missing == 1) p.seta(which, 1.0 - sum);
  }

  // remaining entries via eigenvector rows whose terms are all known
  for (bool progress = true; progress;) {
    progress = false;
    for (int k = 1; k <= kNumBlocks; ++k) {
      if (!cs.active(k)) continue;
      for (int side = 0; side < 2; ++side) {
        auto& has = side == 0 ? p.hf : p.hg;
        auto& ent = side == 0 ? p.f : p.g;
        if (has[k - 1]) continue;
        double sum = 0.0;
        bool ready = true;
        for (int l = 1; l <= kNumBlocks && ready; ++l) {
          if (!cs.active(l) || !pattern_has_edge(k - 1, l - 1)) continue;
          if (!has[l - 1]) {
            ready = false;
          } else {
            sum += p.a[l - 1] * ent[l - 1];
          }
        }
        if (ready) {
          ent[k - 1] = p.quot(sum, side == 0 ? p.mu : p.nu);
          has[k - 1] = true;
          progress = true;
        }
      }
    }
  }
  for (int l = 1; l <= kNumBlocks; ++l)
    if (cs.active(l) && (!p.hf[l - 1] || !p.hg[l - 1]))
      throw std::logic_error(cs.name + ": chain leaves entries undetermined");

  // full program check
  p.bump(std::max(0.0, 2.0 / std::sqrt(3.0) - (mu - nu)));
  double sa = 0.0, sf = 0.0, sg = 0.0;
  for (int l = 1; l <= kNumBlocks; ++l) {
    if (!cs.active(l)) continue;
    const int b = l - 1;
    sa += p.a[b];
    sf += p.a[b] * p.f[b] * p.f[b];
    sg += p.a[b] * p.g[b] * p.g[b];
    p.bump(region_dist(p.a[b], Interval::make(0.0, 1.0)));
    p.bump(region_dist(p.f[b], f_region(l)));
    p.bump(region_dist(p.g[b], g_region(l)));
    p.bump(std::abs(mu * p.f[b] * p.f[b] - nu * p.g[b] * p.g[b] - (mu - nu)));
    double rf = 0.0, rg = 0.0;
    for (int m = 1; m <= kNumBlocks; ++m) {
      if (!cs.active(m) || !pattern_has_edge(l - 1, m - 1)) continue;
      rf += p.a[m - 1] * p.f[m - 1];
      rg += p.a[m - 1] * p.g[m - 1];
    }
    p.bump(std::abs(mu * p.f[b] - rf));
    p.bump(std::abs(nu * p.g[b] - rg));
    for (int m = l + 1; m <= kNumBlocks; ++m) {
      if (!cs.active(m)) continue;
      const double s = p.f[b] * p.f[m - 1] - p.g[b] * p.g[m - 1];
      p.bump(pattern_has_edge(l - 1, m - 1) ? std::max(0.0, -s)
                                            : std::max(0.0, s));
    }
  }
  p.bump(std::abs(sa - 1.0));
  p.bump(std::abs(sf - 1.0));
  p.bump(std::abs(sg - 1.0));
  return p.res;
}

}  // namespace spreadlab
