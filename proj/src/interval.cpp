#include "spreadlab/interval.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace spreadlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();

// +0.0 for -0.0 keeps comparisons and serialization canonical.
double canon(double v) { return v == 0.0 ? 0.0 : v; }

double step_down(double v) {
  if (v == -kInf) return v;
  if (v == kInf) return kMax;
  return std::nextafter(v, -kInf);
}

double step_up(double v) {
  if (v == kInf) return v;
  if (v == -kInf) return -kMax;
  return std::nextafter(v, kInf);
}

// Knuth two-sum error term: exact_sum = s + err whenever s is finite.
double two_sum_err(double a, double b, double s) {
  double bv = s - a;
  double av = s - bv;
  return (a - av) + (b - bv);
}

}  // namespace

namespace rounding {

double add_lo(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return -kInf;  // -inf + +inf endpoint: degenerate, widest
  if (std::isinf(s)) return s > 0 && std::isfinite(a) && std::isfinite(b) ? kMax : s;
  double err = two_sum_err(a, b, s);
  return err < 0 ? step_down(s) : s;
}

double add_hi(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return kInf;
  if (std::isinf(s)) return s < 0 && std::isfinite(a) && std::isfinite(b) ? -kMax : s;
  double err = two_sum_err(a, b, s);
  return err > 0 ? step_up(s) : s;
}

double sub_lo(double a, double b) { return add_lo(a, -b); }
double sub_hi(double a, double b) { return add_hi(a, -b); }

double mul_lo(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) return -kInf;  // 0 * inf endpoint pair
  if (std::isinf(p)) return p > 0 && std::isfinite(a) && std::isfinite(b) ? kMax : p;
  double err = std::fma(a, b, -p);  // exact: a*b = p + err
  return err < 0 ? step_down(p) : p;
}

double mul_hi(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) return kInf;
  if (std::isinf(p)) return p < 0 && std::isfinite(a) && std::isfinite(b) ? -kMax : p;
  double err = std::fma(a, b, -p);
  return err > 0 ? step_up(p) : p;
}

double div_lo(double a, double b) {
  double q = a / b;
  if (std::isnan(q)) return -kInf;
  if (std::isinf(q)) {
    return q > 0 && std::isfinite(a) && std::isfinite(b) && b != 0.0 ? kMax : q;
  }
  if (std::isinf(b)) return q;  // finite/inf = +-0, exact in the extended reals
  double r = std::fma(q, b, -a);  // exact residual q*b - a
  // exact quotient = q - r/b; it lies below q iff r and b share a sign.
  bool q_high = (b > 0) ? (r > 0) : (r < 0);
  return q_high ? step_down(q) : q;
}

double div_hi(double a, double b) {
  double q = a / b;
  if (std::isnan(q)) return kInf;
  if (std::isinf(q)) {
    return q < 0 && std::isfinite(a) && std::isfinite(b) && b != 0.0 ? -kMax : q;
  }
  if (std::isinf(b)) return q;
  double r = std::fma(q, b, -a);
  bool q_low = (b > 0) ? (r < 0) : (r > 0);
  return q_low ? step_up(q) : q;
}

double sqrt_lo(double a) {
  double s = std::sqrt(a);
  if (std::isinf(s)) return s;
  double r = std::fma(s, s, -a);  // sign matches s*s - a
  double out = r > 0 ? step_down(s) : s;
  return out < 0 ? 0.0 : out;  // sqrt of a nonnegative never dips below 0
}

double sqrt_hi(double a) {
  double s = std::sqrt(a);
  if (std::isinf(s)) return s;
  double r = std::fma(s, s, -a);
  return r < 0 ? step_up(s) : s;
}

}  // namespace rounding

using namespace rounding;

Interval Interval::make(double lo, double hi) {
  assert(!std::isnan(lo) && !std::isnan(hi));
  assert(lo <= hi);
  Interval iv;
  iv.lo = canon(lo);
  iv.hi = canon(hi);
  iv.vacant = false;
  return iv;
}

Interval Interval::around(double v) {
  assert(!std::isnan(v));
  return make(step_down(v), step_up(v));
}

Interval Interval::whole() { return make(-kInf, kInf); }

Interval Interval::none() {
  Interval iv;
  iv.vacant = true;
  return iv;
}

double Interval::mid() const {
  assert(!vacant);
  if (lo == -kInf && hi == kInf) return 0.0;
  if (lo == -kInf) return hi - 1.0;
  if (hi == kInf) return lo + 1.0;
  double m = 0.5 * (lo + hi);
  if (std::isinf(m)) m = 0.5 * lo + 0.5 * hi;
  return m;
}

namespace {

constexpr std::size_t kPartCap = 8;

IntervalSet normalized(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& p) { return p.vacant; });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> merged;
  for (const Interval& p : parts) {
    if (!merged.empty() && merged.back().hi >= p.lo) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  IntervalSet out;
  if (merged.size() > kPartCap) {
    out.parts.push_back(Interval::make(merged.front().lo, merged.back().hi));
  } else {
    out.parts = std::move(merged);
  }
  return out;
}

thread_local std::uint64_t g_div_zero_point = 0;

}  // namespace

IntervalSet::IntervalSet(Interval iv) {
  if (!iv.vacant) parts.push_back(iv);
}

bool IntervalSet::contains(double v) const {
  for (const Interval& p : parts)
    if (p.contains(v)) return true;
  return false;
}

double IntervalSet::lo() const {
  assert(!parts.empty());
  return parts.front().lo;
}

double IntervalSet::hi() const {
  assert(!parts.empty());
  return parts.back().hi;
}

IntervalSet add(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  for (const Interval& a : x.parts)
    for (const Interval& b : y.parts)
      out.push_back(Interval::make(add_lo(a.lo, b.lo), add_hi(a.hi, b.hi)));
  return normalized(std::move(out));
}

IntervalSet sub(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  for (const Interval& a : x.parts)
    for (const Interval& b : y.parts)
      out.push_back(Interval::make(sub_lo(a.lo, b.hi), sub_hi(a.hi, b.lo)));
  return normalized(std::move(out));
}

namespace {

// Sign-class product of two parts; picks the endpoint pairs that attain the
// extremes so 0*inf never arises on the chosen pairs except in point-infinity
// corners (where the kernels fall back to the widest enclosure).
Interval mul_parts(const Interval& x, const Interval& y) {
  double a = x.lo, b = x.hi, c = y.lo, d = y.hi;
  if ((a == 0 && b == 0) || (c == 0 && d == 0)) return Interval::point(0.0);
  bool xp = a >= 0, xn = b <= 0;
  bool yp = c >= 0, yn = d <= 0;
  if (xp) {
    if (yp) return Interval::make(mul_lo(a, c), mul_hi(b, d));
    if (yn) return Interval::make(mul_lo(b, c), mul_hi(a, d));
    return Interval::make(mul_lo(b, c), mul_hi(b, d));
  }
  if (xn) {
    if (yp) return Interval::make(mul_lo(a, d), mul_hi(b, c));
    if (yn) return Interval::make(mul_lo(b, d), mul_hi(a, c));
    return Interval::make(mul_lo(a, d), mul_hi(a, c));
  }
  if (yp) return Interval::make(mul_lo(a, d), mul_hi(b, d));
  if (yn) return Interval::make(mul_lo(b, c), mul_hi(a, c));
  return Interval::make(std::min(mul_lo(a, d), mul_lo(b, c)),
                        std::max(mul_hi(a, c), mul_hi(b, d)));
}

}  // namespace

IntervalSet mul(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  for (const Interval& a : x.parts)
    for (const Interval& b : y.parts) out.push_back(mul_parts(a, b));
  return normalized(std::move(out));
}

IntervalSet recip(const IntervalSet& y) {
  std::vector<Interval> out;
  for (const Interval& p : y.parts) {
    double c = p.lo, d = p.hi;
    if (c == 0 && d == 0) {
      ++g_div_zero_point;  // zero-point divisor: no defined quotients
      continue;
    }
    if (c > 0 || d < 0) {
      out.push_back(Interval::make(div_lo(1.0, d), div_hi(1.0, c)));
    } else if (c == 0) {
      out.push_back(Interval::make(div_lo(1.0, d), kInf));
    } else if (d == 0) {
      out.push_back(Interval::make(-kInf, div_hi(1.0, c)));
    } else {  // c < 0 < d: two-branch split
      out.push_back(Interval::make(-kInf, div_hi(1.0, c)));
      out.push_back(Interval::make(div_lo(1.0, d), kInf));
    }
  }
  return normalized(std::move(out));
}

IntervalSet div(const IntervalSet& x, const IntervalSet& y) {
  if (x.empty() || y.empty()) return IntervalSet();
  return mul(x, recip(y));
}

IntervalSet sqrt(const IntervalSet& x) {
  std::vector<Interval> out;
  for (const Interval& p : x.parts) {
    if (p.hi < 0) continue;  // fully negative part contributes nothing
    double lo = p.lo < 0 ? 0.0 : sqrt_lo(p.lo);
    out.push_back(Interval::make(lo, sqrt_hi(p.hi)));
  }
  return normalized(std::move(out));
}

IntervalSet intersect(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.parts.size() && j < y.parts.size()) {
    const Interval& a = x.parts[i];
    const Interval& b = y.parts[j];
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back(Interval::make(lo, hi));
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return normalized(std::move(out));
}

IntervalSet join(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out = x.parts;
  out.insert(out.end(), y.parts.begin(), y.parts.end());
  return normalized(std::move(out));
}

Interval hull(const IntervalSet& x) {
  if (x.empty()) return Interval::none();
  return Interval::make(x.lo(), x.hi());
}

IntervalSet square(const IntervalSet& x) {
  std::vector<Interval> out;
  for (const Interval& p : x.parts) {
    if (p.lo >= 0) {
      out.push_back(Interval::make(mul_lo(p.lo, p.lo), mul_hi(p.hi, p.hi)));
    } else if (p.hi <= 0) {
      out.push_back(Interval::make(mul_lo(p.hi, p.hi), mul_hi(p.lo, p.lo)));
    } else {
      double m = std::max(-p.lo, p.hi);
      out.push_back(Interval::make(0.0, mul_hi(m, m)));
    }
  }
  return normalized(std::move(out));
}

IntervalSet neg(const IntervalSet& x) {
  std::vector<Interval> out;
  for (const Interval& p : x.parts) out.push_back(Interval::make(-p.hi, -p.lo));
  return normalized(std::move(out));
}

std::string to_json(const IntervalSet& x) {
  auto endpoint = [](double v) -> std::string {
    if (v == kInf) return "\"inf\"";
    if (v == -kInf) return "\"-inf\"";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::string s = "[";
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    if (i) s += ",";
    s += "[" + endpoint(x.parts[i].lo) + "," + endpoint(x.parts[i].hi) + "]";
  }
  return s + "]";
}

std::uint64_t div_by_zero_point_count() { return g_div_zero_point; }
void reset_div_by_zero_point_count() { g_div_zero_point = 0; }

}  // namespace spreadlab
