#include "spreadlab/cubic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "spreadlab/spectra.hpp"
#include "spreadlab/stepgraphon.hpp"
#include "spreadlab/util.hpp"

using spreadlab::CubicCoeffs;
using spreadlab::CubicFamily;
using spreadlab::EpsilonPoint;
using spreadlab::QuotientMatrix;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoOverSqrt3 = 1.1547005383792515;

double cubic_value(const CubicCoeffs& k, double x) {
  return ((k.a * x + k.b) * x + k.c) * x + k.d;
}

// companion matrix of a monic cubic; its eigenvalues are the roots, computed
// through a code path (characteristic-polynomial closed forms in the small
// eigensolver) that shares nothing with viete_roots
QuotientMatrix companion(double b, double c, double d) {
  QuotientMatrix m(3);
  m.set(0, 2, -d);
  m.set(1, 0, 1.0);
  m.set(1, 2, -c);
  m.set(2, 1, 1.0);
  m.set(2, 2, -b);
  return m;
}

double sample_triangle_e1(spreadlab::Rng& rng, std::uniform_real_distribution<double>& u) {
  return -1.0 / 3 + u(rng);
}

}  // namespace

TEST_CASE("viete roots of x^3 - x") {
  const CubicCoeffs k = CubicCoeffs::from(1.0, 0.0, -1.0, 0.0);
  const std::array<double, 3> r = spreadlab::viete_roots(k);
  CHECK(std::fabs(r[0] - 1.0) < 1e-15);
  CHECK(std::fabs(r[1]) < 1e-15);
  CHECK(std::fabs(r[2] + 1.0) < 1e-15);
}

TEST_CASE("viete roots match the companion-matrix eigensolver") {
  spreadlab::Rng rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    // build a cubic from three well-separated real roots
    double r1 = -2.0 + 4.0 * u(rng);
    double r2 = r1 + 0.05 + 2.0 * u(rng);
    double r3 = r2 + 0.05 + 2.0 * u(rng);
    const double b = -(r1 + r2 + r3);
    const double c = r1 * r2 + r1 * r3 + r2 * r3;
    const double d = -r1 * r2 * r3;

    const CubicCoeffs k = CubicCoeffs::from(1.0, b, c, d);
    const std::array<double, 3> r = spreadlab::viete_roots(k);
    CHECK(std::fabs(r[0] - r3) < 1e-10);
    CHECK(std::fabs(r[1] - r2) < 1e-10);
    CHECK(std::fabs(r[2] - r1) < 1e-10);

    const std::vector<double> ev = spreadlab::real_eigs_small(companion(b, c, d));
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(r[i] - ev[i]) < 1e-10);

    // residual scale: coefficient magnitude times root magnitude cubed
    const double scale =
        std::max({1.0, std::fabs(b), std::fabs(c), std::fabs(d)}) *
        std::pow(std::max(1.0, std::fabs(r3)), 3);
    for (double x : r) CHECK(std::fabs(cubic_value(k, x)) <= 1e-9 * scale);
  }
  // a complex pair is refused
  CHECK_THROWS_AS(spreadlab::viete_roots(CubicCoeffs::from(1, 0, 0, -1)),
                  std::domain_error);
  CHECK_THROWS_AS(CubicCoeffs::from(0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("family cubic at the origin reduces to the two-block eigenvalues") {
  // limits of the perturbed family as everything goes to zero: the cubic
  // becomes x^3 - (2/3)x^2 - (2/9)x with roots (1+sqrt3)/3, 0, (1-sqrt3)/3
  const double root3 = std::sqrt(3.0);
  const CubicCoeffs k = CubicCoeffs::from(1.0, -2.0 / 3, -2.0 / 9, 0.0);
  CHECK(std::fabs(k.p - (-10.0 / 27)) < 1e-16);
  CHECK(std::fabs(k.q - (-52.0 / 729)) < 1e-16);
  CHECK(std::fabs(k.A - 2.0 * std::sqrt(10.0) / 9) < 1e-15);
  CHECK(std::fabs(k.B - 2.0 / 9) < 1e-16);
  CHECK(std::fabs(k.phi - std::acos(13.0 * std::sqrt(10.0) / 50)) < 1e-14);

  const std::array<double, 3> r = spreadlab::viete_roots(k);
  CHECK(std::fabs(r[0] - (1.0 + root3) / 3) < 1e-14);
  CHECK(std::fabs(r[1]) < 1e-15);
  CHECK(std::fabs(r[2] - (1.0 - root3) / 3) < 1e-14);

  const double s = spreadlab::family_spread({0, 0, 0}, CubicFamily::kPerturbed);
  CHECK(std::fabs(s - kTwoOverSqrt3) < 1e-12);
}

TEST_CASE("root sign structure across the parameter triangle") {
  spreadlab::Rng rng(1337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int kept = 0;
  while (kept < 500) {
    const double e1 = sample_triangle_e1(rng, u);
    const double e2 = -2.0 / 3 + u(rng);
    if (!spreadlab::in_parameter_triangle(e1, e2)) continue;
    // stay a little off the boundary so the middle root is safely positive
    if (e1 + e2 < 1e-3 || e1 > 2.0 / 3 - 1e-3 || e2 > 1.0 / 3 - 1e-3) continue;
    ++kept;
    // characteristic polynomial of the three-block quotient, frozen here so
    // this test does not depend on the family_spread plumbing
    const double b = e1 - 2.0 / 3;
    const double c = (3.0 * e2 + 2.0) * (3.0 * e2 - 1.0) / 9.0;
    const double d = (e1 + e2) * (3.0 * e1 - 2.0) * (3.0 * e2 - 1.0) / 9.0;
    const std::array<double, 3> r =
        spreadlab::viete_roots(CubicCoeffs::from(1.0, b, c, d));
    REQUIRE(r[0] > r[1]);
    REQUIRE(r[1] > 0.0);
    REQUIRE(r[2] < 0.0);
  }
}

TEST_CASE("trig difference identities on (0, pi/3)") {
  auto D_raw = [](int k, int l, double x) {
    return std::cos(x + 2.0 * kPi * k / 3) - std::cos(x + 2.0 * kPi * l / 3);
  };
  for (int i = 1; i < 200; ++i) {
    const double x = (kPi / 3) * i / 200.0;
    const double d01 = D_raw(0, 1, x), d02 = D_raw(0, 2, x), d21 = D_raw(2, 1, x);
    CHECK(std::fabs(d01 - std::sqrt(3.0) * std::cos(x - kPi / 6)) < 1e-14);
    CHECK(std::fabs(d02 - std::sqrt(3.0) * std::cos(x + kPi / 6)) < 1e-14);
    CHECK(std::fabs(d21 - std::sqrt(3.0) * std::sin(x)) < 1e-14);
    CHECK(d01 > std::max(d02, d21));
    CHECK(std::min(d02, d21) >= 0.0);
  }
}

TEST_CASE("family spread agrees with the generic small eigensolver") {
  spreadlab::Rng rng(5150);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int kept = 0;
  while (kept < 100) {
    const double e1 = sample_triangle_e1(rng, u);
    const double e2 = -2.0 / 3 + u(rng);
    if (!spreadlab::in_parameter_triangle(e1, e2)) continue;
    if (e1 + e2 < 1e-6) continue;
    ++kept;
    const std::vector<double> ev =
        spreadlab::real_eigs_small(spreadlab::three_block_quotient(e1, e2, 0.0));
    const double s = spreadlab::family_spread({e1, e2, 0.0}, CubicFamily::kTriangle);
    CHECK(std::fabs(s - (ev.front() - ev.back())) < 1e-9);
  }
}

TEST_CASE("triangle family approaches the two-block spread at the edge") {
  const double e1 = 0.1;
  const double a5 = 2.0 / 3 - e1;  // the looped block's mass in the limit
  const double limit = spreadlab::two_block_spread(a5);
  const double far = spreadlab::family_spread({e1, -e1 + 1e-3, 0.0}, CubicFamily::kTriangle);
  const double near = spreadlab::family_spread({e1, -e1 + 1e-5, 0.0}, CubicFamily::kTriangle);
  CHECK(std::fabs(near - limit) < 1e-4);
  CHECK(std::fabs(near - limit) < std::fabs(far - limit));

  // the closed-boundary reading: the degenerate edge point itself evaluates
  const double at = spreadlab::family_spread({e1, -e1, 0.0}, CubicFamily::kTriangle);
  CHECK(std::fabs(at - limit) < 1e-12);
  // but strictly outside still errors
  CHECK_THROWS_AS(spreadlab::family_spread({0.7, 0.0, 0.0}, CubicFamily::kTriangle),
                  std::domain_error);
  CHECK_THROWS_AS(spreadlab::family_spread({0.1, 0.0, 0.5}, CubicFamily::kPerturbed),
                  std::domain_error);
}

TEST_CASE("published non-triangle stationary candidates fail the domain filter") {
  const double pts[6][2] = {{2.0 / 3, -2.0 / 3}, {-1.0 / 3, 1.0 / 3}, {0.0, 0.0},
                            {2.0 / 3, 1.0 / 3},  {2.0 / 3, -1.0 / 6}, {1.2047, 0.0707}};
  for (const auto& p : pts) CHECK(!spreadlab::in_parameter_triangle(p[0], p[1]));
}

TEST_CASE("gradient scan finds no interior stationary cell at full height") {
  const std::vector<spreadlab::CriticalCell> cells =
      spreadlab::scan_critical_points(1.0 / 400);
  for (const auto& c : cells) {
    CHECK(c.grad < 12.0 / 400);
    CHECK(c.s < 1.154);  // everything near-critical sits well below the max
  }
  // a tiny threshold leaves nothing: the family has no interior stationary
  // points at all, so lattice gradients stay bounded away from zero
  CHECK(spreadlab::scan_critical_points(1.0 / 400, 1e-9).empty());

  CHECK_THROWS_AS(spreadlab::scan_critical_points(0.02), std::invalid_argument);
  CHECK_THROWS_AS(spreadlab::scan_critical_points(1e-5), std::invalid_argument);
}

TEST_CASE("perturbed-family maximizer follows the linear law in z") {
  // z = 0: the origin is the exact maximum and must be reproduced sharply
  const EpsilonPoint at0 = spreadlab::maximize_perturbed_spread(0.0);
  CHECK(std::fabs(at0.e1) < 1e-9);
  CHECK(std::fabs(at0.e2) < 1e-9);

  for (const double z : {1e-3, -1e-3}) {
    const EpsilonPoint opt = spreadlab::maximize_perturbed_spread(z);
    const double want1 = 7.0 * z / 30.0, want2 = -z / 3.0;
    CHECK(std::fabs(opt.e1 - want1) < 0.1 * std::fabs(want1));
    CHECK(std::fabs(opt.e2 - want2) < 0.1 * std::fabs(want2));

    // independent fine-grid oracle around the reported maximum
    double bx = 0.0, by = 0.0, bv = -1.0;
    for (int i = -60; i <= 60; ++i)
      for (int j = -60; j <= 60; ++j) {
        const double x = i * 1e-5, y = j * 1e-5;
        const double v = spreadlab::family_spread({x, y, z}, CubicFamily::kPerturbed);
        if (v > bv) {
          bv = v;
          bx = x;
          by = y;
        }
      }
    CHECK(std::fabs(opt.e1 - bx) <= 1.5e-5);
    CHECK(std::fabs(opt.e2 - by) <= 1.5e-5);
    CHECK(spreadlab::family_spread({opt.e1, opt.e2, z}, CubicFamily::kPerturbed) >=
          bv - 1e-12);
  }
  CHECK_THROWS_AS(spreadlab::maximize_perturbed_spread(0.5), std::domain_error);
}
