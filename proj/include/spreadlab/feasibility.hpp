// Interval elimination over the seven-block support cases.  Each admissible
// support set S gets a constraint program over block weights, eigenfunction
// entries and the extreme eigenvalues (mu, nu); a box of (a_i, a_j, mu, nu)
// values is refuted when interval evaluation of the program's equations and
// memberships produces an empty set.  The divide-and-conquer driver bisects
// surviving boxes until everything is refuted or a depth cap is hit.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spreadlab/interval.hpp"
#include "spreadlab/stepgraphon.hpp"

namespace spreadlab {

// One closed-form derivation rule instantiated at specific blocks (labels are
// 1-based, matching the case names; the pattern rows they refer to are the
// same data as gstar_pattern()).  A rule writes a handful of weights/entries
// as functions of already-known quantities; every write narrows the target by
// intersection, so rule order affects tightness only, never soundness.
struct ChainStep {
  enum class Rule {
    // Ladder pair (i, j) whose restricted neighborhoods differ exactly by
    // {j}: both blocks' entry squares are rational in a_j, mu, nu (the F1
    // denominator), and the entries are proportional with known ratios.
    kSquaresLower,
    // Mirror pair differing exactly by {i} (the looped block): squares are
    // rational in a_i via F1(-a_i).
    kSquaresUpper,
    // Consecutive triple (i, j, k) = (2,3,4) or (5,6,7): the first weight is
    // rational in the middle weight (F2 denominator), and the end block's
    // entries follow from differencing the eigenvector rows of j and k.
    kTripleWeight,
    // End weight of a triple when block 1 is active: a_k rational in a_j
    // (F2^2/F3), plus block 1's entries from the rows of 1 and i.
    kTopWeightDominated,
    // Same end weight when the middle rung j is inactive: a_k rational in
    // a_i (F2 at -a_i), block 1's entries as above.
    kTopWeightGap,
    // End weight when block 1 is inactive but the opposite ladder's end
    // block is active: a_k = F4(a_j)/F3(a_j).
    kTopWeightUndominated,
    // Weights of blocks 4 and 7 from the remaining mass and the entry
    // differences of blocks 2 and 5 (their rows differ only in those two
    // columns); solved once through the f entries and once through g.
    kPairSplit,
  };
  Rule rule;
  int i = 0, j = 0, k = 0;  // 1-based block labels; unused slots stay 0
};

// A support case: which blocks carry weight, which two weights span the
// search box, and the derivation chain that pins everything else down.
struct CaseSpec {
  std::string name;      // bar notation over {1}|{2,3,4}|{5,6,7}, e.g. "1|24|567"
  std::uint8_t support;  // bit b set => block b+1 active
  int wi = 0;            // searched weight on the ladder side, in {1,2,3,4}
  int wj = 0;            // searched weight on the mirrored side, in {5,6,7}
  std::vector<ChainStep> chain;

  bool active(int label) const { return (support >> (label - 1)) & 1; }
};

// The 17 distinct support cases (all others reduce to these by merging equal
// rows and relabeling).  Order is fixed; reports and tests index into it.
const std::array<CaseSpec, 17>& case_table();

// Lookup by name; accepts bar notation ("1|24|7") or bare digits ("1247").
// Throws std::invalid_argument for anything not in the table.
const CaseSpec& find_case(std::string_view name);

// Search box over the two free weights and the eigenvalue rectangle
// [.65,1] x [-.5,-.15].  split_dim cycles a_i -> a_j -> mu -> nu.
struct SearchBox {
  Interval a_i, a_j, mu, nu;
  int depth = 0;
  int split_dim = 0;  // 0: a_i, 1: a_j, 2: mu, 3: nu

  static SearchBox whole_domain();
};

std::string to_json(const SearchBox& box);

// Single-box feasibility test.  Runs a fixed number of narrowing sweeps
// (derivation chain, eigenvector rows, norm sums, per-block ellipse
// identities) over interval sets seeded from the box, then the pairwise sign
// inequalities.  Returns false as soon as any set empties; *why (optional)
// then names the violated constraint, e.g. "eigen g[7]" or "range f[3]".
// All solutions with mu - nu >= 2/sqrt(3) inside the box survive: every
// narrowing step is an intersection with a relation the program's equations
// imply, so the test is sound and monotone under box inclusion.
bool is_feasible(const CaseSpec& cs, const SearchBox& box, std::string* why = nullptr);

// Largest constraint violation of the fully derived plain-double
// configuration at a parameter point; ~0 exactly at genuine program
// solutions.  The soundness tests use it to confirm that eliminated boxes
// contain no solutions and that known solutions' boxes survive.
double point_residual(const CaseSpec& cs, double a_i, double a_j, double mu, double nu);

// The ladder pair's inner-block entry squares as quotients in its weight and
// the eigenvalue rectangle -- the displays behind kSquaresLower, evaluated
// without the rule's sign side-conditions.  An enclosure of f^2 or g^2 that
// misses [0, inf) refutes the pair outright; the regression tests pin one
// such enclosure.
IntervalSet ladder_f_square(const IntervalSet& a_j, const IntervalSet& mu,
                            const IntervalSet& nu);
IntervalSet ladder_g_square(const IntervalSet& a_j, const IntervalSet& mu,
                            const IntervalSet& nu);

struct EliminationReport {
  // eliminated: every box refuted.  depth_exhausted: some boxes reached the
  // depth cap still unrefuted; they are listed in surviving_boxes.  survived
  // is reserved for consumers that can certify feasibility outright; the
  // bisection search alone never proves it, so it does not emit the value.
  enum class Status { eliminated, depth_exhausted, survived };

  std::string case_name;
  Status status = Status::eliminated;
  long boxes_processed = 0;
  int max_depth_reached = 0;
  std::vector<SearchBox> surviving_boxes;        // DFS order, deterministic
  std::map<std::string, long> refutations;       // constraint tag -> box count
  double wall_time_sec = 0.0;                    // informational only
};

// Initial subdivision: reciprocal cell sizes (cells of width 1/g), so the
// default cuts mu and nu into 7 cells each and the weights into 10 each.
struct GridSpec {
  int g_mu = 20, g_nu = 20, g_ai = 10, g_aj = 10;
};

// The grid's seed cells in row-major (a_i, a_j, mu, nu) order.
std::vector<SearchBox> seed_boxes(const GridSpec& grid);

struct EliminateOptions {
  GridSpec grid{};
  int jobs = 1;  // worker threads over seed cells; 0 = hardware default
  // When set, overrides the grid: the run continues from exactly these boxes
  // (a frontier written by `checkpoint` below round-trips through this).
  const std::vector<SearchBox>* seeds = nullptr;
  // Called at most every checkpoint_period_sec with the boxes still needing
  // work: cells of unfinished seeds plus survivors found so far.  Feeding
  // that list back via `seeds` resumes the run (in-flight cells restart).
  std::function<void(const std::vector<SearchBox>&)> checkpoint;
  double checkpoint_period_sec = 60.0;
};

// Depth-first elimination of one case.  Seeds the grid, tests each box,
// bisects survivors on the cycling dimension until refuted or depth ==
// max_depth (<= 64).  The report is a deterministic function of the inputs:
// identical for any jobs value, wall_time_sec aside.
EliminationReport eliminate_case(const CaseSpec& cs, int max_depth,
                                 const EliminateOptions& opt = {});

// All 17 cases in table order with the same depth cap and jobs budget.
std::vector<EliminationReport> verify_all(int max_depth, int jobs = 1);

// True iff the non-eliminated cases are exactly {1|7, 4|57} -- the two
// programs that genuinely contain the optimal configuration (the global
// optimum lives in 1|7; 4|57 carries the same solution with a zero-weight
// block attached) and therefore can never be refuted.
bool survivors_are_expected(const std::vector<EliminationReport>& reports);

}  // namespace spreadlab
