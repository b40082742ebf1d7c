#include "spreadlab/stepgraphon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

#include "spreadlab/util.hpp"

namespace spreadlab {

const SymMatrix& gstar_pattern() {
  static const SymMatrix m = [] {
    // 0-based neighborhood masks; each row after 0 and 4 drops one more
    // block, which is what makes every row a nested neighborhood.
    unsigned nbr[kNumBlocks];
    nbr[0] = 0x7f;
    nbr[1] = nbr[0] & ~(1u << 3);
    nbr[2] = nbr[1] & ~(1u << 2);
    nbr[3] = nbr[2] & ~(1u << 1);
    nbr[4] = nbr[0] & ~(1u << 6);
    nbr[5] = nbr[4] & ~(1u << 5);
    nbr[6] = nbr[5] & ~(1u << 4);
    SymMatrix b(kNumBlocks);
    for (int i = 0; i < kNumBlocks; ++i)
      for (int j = i; j < kNumBlocks; ++j)
        if (nbr[i] >> j & 1) b.set(i, j, 1.0);
    // the masks above are symmetric by construction (checked in the tests
    // against frozen row supports), so filling j >= i is enough
    return b;
  }();
  return m;
}

bool pattern_has_edge(int i, int j) {
  if (i < 0 || i >= kNumBlocks || j < 0 || j >= kNumBlocks)
    throw std::invalid_argument("pattern_has_edge: block index out of range");
  return gstar_pattern().at(i, j) != 0.0;
}

WeightVector::WeightVector(const std::array<double, kNumBlocks>& w) : a(w) {
  double s = 0.0;
  for (double v : a) {
    if (!(v >= 0.0))
      throw std::invalid_argument("WeightVector: weights must be nonnegative");
    s += v;
  }
  if (std::fabs(s - 1.0) > 1e-9)
    throw std::invalid_argument("WeightVector: weights must sum to 1");
  if (s != 1.0)
    for (double& v : a) v /= s;
}

double spread_of_weights(const WeightVector& alpha) {
  int sup[kNumBlocks];
  int k = 0;
  for (int i = 0; i < kNumBlocks; ++i)
    if (alpha.a[i] > 0.0) sup[k++] = i;

  SymMatrix pat(k);
  std::vector<double> w(k);
  for (int i = 0; i < k; ++i) {
    w[i] = alpha.a[sup[i]];
    for (int j = i; j < k; ++j)
      if (pattern_has_edge(sup[i], sup[j])) pat.set(i, j, 1.0);
  }
  SpectralPair p = extreme_eigs(stepgraphon_matrix(w, pat));
  // zero is always in the spectrum of the underlying kernel operator, even
  // when the restricted block matrix misses it
  return std::max(p.lambda_max, 0.0) - std::min(p.lambda_min, 0.0);
}

double two_block_spread(double a1) {
  if (!(a1 >= 0.0 && a1 <= 1.0))
    throw std::invalid_argument("two_block_spread: a1 must lie in [0,1]");
  const double closed = std::sqrt(a1 * (4.0 - 3.0 * a1));
  std::array<double, kNumBlocks> w{};
  w[0] = a1;
  w[6] = 1.0 - a1;
  const double direct = spread_of_weights(WeightVector(w));
  if (std::fabs(direct - closed) > 1e-12)
    throw std::logic_error("two_block_spread: closed form and eigensolve disagree");
  return closed;
}

namespace {

// Line-maximizes fn over [lo, hi] by repeated sample-and-shrink: coarse scan,
// then narrow around the best point until the window is below tol.  Not
// assuming unimodality; the coarse scan picks the basin, the shrink refines.
template <class Fn>
double line_max(const Fn& fn, double lo, double hi, double tol, double* arg) {
  double best_t = lo, best_v = fn(lo);
  double width = hi - lo;
  if (width <= 0.0) {
    *arg = lo;
    return best_v;
  }
  const int kCoarse = 12;
  for (int i = 1; i <= kCoarse; ++i) {
    const double t = lo + width * i / kCoarse;
    const double v = fn(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double w = width / kCoarse;
  while (w > tol) {
    const double a = std::max(lo, best_t - w), b = std::min(hi, best_t + w);
    for (int i = 0; i <= 6; ++i) {
      const double t = a + (b - a) * i / 6.0;
      const double v = fn(t);
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    w /= 3.0;
  }
  *arg = best_t;
  return best_v;
}

// Plot A cell objective: masses x into blocks {2,3} and y into {5,6} with
// split parameters, remaining mass over the {0,1,4} simplex.
double plot_a_value(double x, double y, const std::array<double, 4>& t) {
  const double r = std::max(0.0, 1.0 - x - y);  // x+y can land ulps past 1
  std::array<double, kNumBlocks> w{};
  w[2] = t[0] * x;
  w[3] = (1.0 - t[0]) * x;
  w[5] = t[1] * y;
  w[6] = (1.0 - t[1]) * y;
  w[0] = t[2] * r;
  w[1] = t[3] * r;
  w[4] = (1.0 - t[2] - t[3]) * r;
  if (w[4] < 0.0) w[4] = 0.0;  // roundoff guard; t[2]+t[3] <= 1 by projection
  return spread_of_weights(WeightVector(w));
}

double max_plot_a_cell(double x, double y, Rng& rng) {
  const double kTol = 1e-6;   // parameter resolution of each line search
  const double kGain = 1e-7;  // stop cycling when a full sweep gains less
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double best = -1.0;
  for (int restart = 0; restart < 4; ++restart) {
    std::array<double, 4> t;
    if (restart == 0) {
      t = {0.5, 0.0, 1.0, 0.0};  // all free mass on block 0, y on block 6
    } else {
      t[0] = unif(rng);
      t[1] = unif(rng);
      t[2] = unif(rng);
      t[3] = unif(rng) * (1.0 - t[2]);
    }
    double cur = plot_a_value(x, y, t);
    for (int cycle = 0; cycle < 40; ++cycle) {
      const double at_entry = cur;
      for (int c = 0; c < 4; ++c) {
        // feasible segment for coordinate c with the others held fixed
        double lo = 0.0, hi = 1.0;
        if (c == 2) hi = 1.0 - t[3];
        if (c == 3) hi = 1.0 - t[2];
        auto probe = [&](double v) {
          std::array<double, 4> s = t;
          s[c] = v;
          return plot_a_value(x, y, s);
        };
        double arg;
        const double v = line_max(probe, lo, hi, kTol, &arg);
        if (v > cur) {
          cur = v;
          t[c] = arg;
        }
      }
      if (cur - at_entry < kGain) break;
    }
    best = std::max(best, cur);
  }
  return best;
}

// Plot B cell objective: a5 = y, a7 = x, nothing on 2/3/4, and the leftover
// mass split between blocks 0 and 5 by t.
double max_plot_b_cell(double x, double y) {
  const double r = std::max(0.0, 1.0 - x - y);
  auto value = [&](double t) {
    std::array<double, kNumBlocks> w{};
    w[4] = y;
    w[6] = x;
    w[0] = t * r;
    w[5] = (1.0 - t) * r;
    return spread_of_weights(WeightVector(w));
  };
  double arg;
  return line_max(value, 0.0, 1.0, 1e-7, &arg);
}

void append_cell(std::string* out, double x, double y, double v) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", x, y, v);
  *out += buf;
}

}  // namespace

std::string contour_grid(ContourPlot plot, double step, int jobs) {
  const long n = std::lround(1.0 / step);
  if (n < 20 || n > 200 || std::fabs(n * step - 1.0) > 1e-9)
    throw std::invalid_argument("contour_grid: step must be 1/N for N in [20,200]");
  if (jobs < 0) throw std::invalid_argument("contour_grid: jobs must be >= 0");
  if (jobs == 0)
    jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

  const int nn = static_cast<int>(n);
  // one row of output per x value, built independently; seeds depend only on
  // the cell so the CSV is identical for any job count
  std::vector<std::string> rows(nn + 1);
  auto do_row = [&](int i) {
    const double x = i * step;
    std::string& out = rows[i];
    for (int j = 0; j + i <= nn; ++j) {
      const double y = j * step;
      double v;
      if (plot == ContourPlot::A) {
        Rng rng(0x5eed5eedULL + 1000003ULL * i + 8191ULL * j);
        v = max_plot_a_cell(x, y, rng);
      } else {
        v = max_plot_b_cell(x, y);
      }
      append_cell(&out, x, y, v);
    }
    for (int j = nn - i + 1; j <= nn; ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,.\n", x, j * step);
      out += buf;
    }
  };

  if (jobs == 1) {
    for (int i = 0; i <= nn; ++i) do_row(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int tth = 0; tth < jobs; ++tth)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i <= nn; i = next.fetch_add(1)) do_row(i);
      });
    for (auto& th : pool) th.join();
  }

  std::string csv = "x,y,spread\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

}  // namespace spreadlab
