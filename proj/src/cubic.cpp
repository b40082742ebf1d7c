#include "spreadlab/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spreadlab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

CubicCoeffs CubicCoeffs::from(double a, double b, double c, double d) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(d))
    throw std::invalid_argument("CubicCoeffs: need a finite cubic with a != 0");
  CubicCoeffs k;
  k.a = 1.0;
  k.b = b / a;
  k.c = c / a;
  k.d = d / a;
  k.p = (3.0 * k.c - k.b * k.b) / 3.0;
  k.q = (2.0 * k.b * k.b * k.b - 9.0 * k.b * k.c + 27.0 * k.d) / 27.0;
  k.B = -k.b / 3.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (k.p < 0.0) {
    k.A = 2.0 * std::sqrt(-k.p / 3.0);
    const double arg = 3.0 * k.q / (k.A * k.p);
    k.phi = (std::fabs(arg) <= 1.0 + 1e-12)
                ? std::acos(std::clamp(arg, -1.0, 1.0))
                : nan;
  } else if (k.p == 0.0 && k.q == 0.0) {
    k.A = 0.0;
    k.phi = 0.0;  // triple root at B
  } else {
    k.phi = nan;
  }
  return k;
}

std::array<double, 3> viete_roots(const CubicCoeffs& k) {
  if (!(k.phi == k.phi))
    throw std::domain_error("viete_roots: cubic has a complex root pair");
  std::array<double, 3> r{k.A * std::cos(k.phi / 3.0) + k.B,
                          k.A * std::cos((k.phi + 2.0 * kPi) / 3.0) + k.B,
                          k.A * std::cos((k.phi + 4.0 * kPi) / 3.0) + k.B};
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

bool in_parameter_triangle(double e1, double e2) {
  return e1 > -1.0 / 3 && e1 < 2.0 / 3 && e2 > -2.0 / 3 && e2 < 1.0 / 3 &&
         e1 + e2 > 0.0 && e1 + e2 < 1.0;
}

QuotientMatrix three_block_quotient(double e1, double e2, double z) {
  QuotientMatrix m(3);
  m.set(0, 0, 2.0 / 3 - e1 - z);
  m.set(0, 2, 1.0 / 3 - e2);
  m.set(1, 2, 1.0 / 3 - e2);
  m.set(2, 0, 2.0 / 3 - e1);
  m.set(2, 1, e1 + e2);
  return m;
}

namespace {

// characteristic-polynomial coefficients of the three-block quotient, from
// the closed forms (monic; b is minus the trace, d is minus the determinant)
CubicCoeffs family_cubic(double e1, double e2, double z) {
  const double b = e1 + z - 2.0 / 3;
  const double c = (3.0 * e2 + 2.0) * (3.0 * e2 - 1.0) / 9.0;
  const double d = (e1 + e2) * (3.0 * e1 + 3.0 * z - 2.0) * (3.0 * e2 - 1.0) / 9.0;
  return CubicCoeffs::from(1.0, b, c, d);
}

}  // namespace

double family_spread(const EpsilonPoint& e, CubicFamily family) {
  if (family == CubicFamily::kTriangle) {
    if (e.z != 0.0)
      throw std::invalid_argument("family_spread: the triangle family has no z");
    // closed triangle: the formula extends continuously to the boundary
    if (!(e.e1 >= -1.0 / 3 && e.e1 <= 2.0 / 3 && e.e2 >= -2.0 / 3 &&
          e.e2 <= 1.0 / 3 && e.e1 + e.e2 >= 0.0 && e.e1 + e.e2 <= 1.0))
      throw std::domain_error("family_spread: point outside the parameter triangle");
  } else {
    if (!(std::fabs(e.e1) <= 0.06 && std::fabs(e.e2) <= 0.06 &&
          std::fabs(e.z) <= 0.01))
      throw std::domain_error("family_spread: perturbed family wants |e| <= 0.06, |z| <= 0.01");
  }
  const CubicCoeffs k = family_cubic(e.e1, e.e2, e.z);
  if (!(k.phi == k.phi))
    throw std::domain_error("family_spread: complex-pair regime");
  const double s = std::sqrt(3.0) * k.A * std::cos((2.0 * k.phi - kPi) / 6.0);
  const std::array<double, 3> r = viete_roots(k);
  if (std::fabs(s - (r[0] - r[2])) > 1e-10)
    throw std::logic_error("family_spread: trig form and root gap disagree");
  return s;
}

std::vector<CriticalCell> scan_critical_points(double grid, double threshold) {
  if (!(grid >= 1e-4 && grid <= 1e-2))
    throw std::invalid_argument("scan_critical_points: grid must lie in [1e-4, 1e-2]");
  if (threshold == 0.0) threshold = 12.0 * grid;
  if (!(threshold > 0.0))
    throw std::invalid_argument("scan_critical_points: threshold must be positive");

  const double m = 3.0 * grid;  // boundary margin, see header
  auto s_at = [](double x, double y) {
    return family_spread({x, y, 0.0}, CubicFamily::kTriangle);
  };

  std::vector<CriticalCell> out;
  const long i_lo = std::lround(std::ceil((-1.0 / 3 + m) / grid));
  const long i_hi = std::lround(std::floor((2.0 / 3 - m) / grid));
  for (long i = i_lo; i <= i_hi; ++i) {
    const double e1 = i * grid;
    const long j_lo = std::lround(std::ceil((-2.0 / 3 + m) / grid));
    const long j_hi = std::lround(std::floor((1.0 / 3 - m) / grid));
    for (long j = j_lo; j <= j_hi; ++j) {
      const double e2 = j * grid;
      const double sum = e1 + e2;
      if (sum < m || sum > 1.0 - m) continue;
      const double gx = (s_at(e1 + grid, e2) - s_at(e1 - grid, e2)) / (2.0 * grid);
      const double gy = (s_at(e1, e2 + grid) - s_at(e1, e2 - grid)) / (2.0 * grid);
      const double g = std::hypot(gx, gy);
      if (g < threshold) out.push_back({e1, e2, s_at(e1, e2), g});
    }
  }
  return out;
}

EpsilonPoint maximize_perturbed_spread(double z) {
  if (!(std::fabs(z) <= 0.01))
    throw std::domain_error("maximize_perturbed_spread: |z| <= 0.01");
  const double kBox = 0.05;
  auto clampv = [&](double v) { return std::clamp(v, -kBox, kBox); };
  auto f = [&](double x, double y) {
    return family_spread({x, y, z}, CubicFamily::kPerturbed);
  };

  // Nelder-Mead on 2 variables; the best vertex only moves on strict
  // improvement so a start at the exact maximum stays put
  struct V {
    double x, y, fv;
  };
  std::array<V, 3> s{V{0.0, 0.0, f(0.0, 0.0)}, V{0.01, 0.0, f(0.01, 0.0)},
                     V{0.0, 0.01, f(0.0, 0.01)}};
  auto order = [&] {
    std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.fv > b.fv; });
  };
  order();
  for (int it = 0; it < 300; ++it) {
    const double diam = std::max(std::hypot(s[0].x - s[1].x, s[0].y - s[1].y),
                                 std::hypot(s[0].x - s[2].x, s[0].y - s[2].y));
    if (diam < 1e-7) break;  // Newton polish takes it from here
    const double cx = (s[0].x + s[1].x) / 2, cy = (s[0].y + s[1].y) / 2;
    const double rx = clampv(cx + (cx - s[2].x)), ry = clampv(cy + (cy - s[2].y));
    const double fr = f(rx, ry);
    if (fr > s[0].fv) {
      const double ex = clampv(cx + 2 * (cx - s[2].x)), ey = clampv(cy + 2 * (cy - s[2].y));
      const double fe = f(ex, ey);
      s[2] = fe > fr ? V{ex, ey, fe} : V{rx, ry, fr};
    } else if (fr > s[1].fv) {
      s[2] = {rx, ry, fr};
    } else {
      const double kx = cx + 0.5 * (s[2].x - cx), ky = cy + 0.5 * (s[2].y - cy);
      const double fk = f(kx, ky);
      if (fk > s[2].fv) {
        s[2] = {kx, ky, fk};
      } else {  // shrink toward the best vertex
        for (int v = 1; v < 3; ++v) {
          s[v].x = s[0].x + 0.5 * (s[v].x - s[0].x);
          s[v].y = s[0].y + 0.5 * (s[v].y - s[0].y);
          s[v].fv = f(s[v].x, s[v].y);
        }
      }
    }
    order();
  }

  // central-difference Newton: gradient noise ~eps/h localizes the optimum
  // far better than value comparisons can
  double x = s[0].x, y = s[0].y;
  const double h = 1e-6;
  for (int it = 0; it < 30; ++it) {
    const double f0 = f(x, y);
    const double fxp = f(x + h, y), fxm = f(x - h, y);
    const double fyp = f(x, y + h), fym = f(x, y - h);
    const double gx = (fxp - fxm) / (2 * h), gy = (fyp - fym) / (2 * h);
    const double hxx = (fxp - 2 * f0 + fxm) / (h * h);
    const double hyy = (fyp - 2 * f0 + fym) / (h * h);
    const double hxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) +
                        f(x - h, y - h)) /
                       (4 * h * h);
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0) || !(hxx < 0.0)) break;  // not in the concave basin
    double sx = -(hyy * gx - hxy * gy) / det;
    double sy = -(hxx * gy - hxy * gx) / det;
    const double len = std::hypot(sx, sy);
    if (len > 0.01) {  // safeguard: stay inside the basin
      sx *= 0.01 / len;
      sy *= 0.01 / len;
    }
    x = clampv(x + sx);
    y = clampv(y + sy);
    if (std::hypot(sx, sy) < 1e-12) break;
  }
  return {x, y, z};
}

}  // namespace spreadlab
