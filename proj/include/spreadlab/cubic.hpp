// Viete-form root extraction for real-rooted cubics, plus the two parametric
// 3x3 families whose spread has a trigonometric closed form: the three-block
// quotient over its full parameter triangle, and a z-perturbed variant near
// the origin (the perturbation models the integer-rounding defect of finite
// graphs against the continuous optimum).
#pragma once

#include <array>
#include <vector>

#include "spreadlab/spectra.hpp"

namespace spreadlab {

// Monic-normalized cubic with the Viete quantities precomputed.
struct CubicCoeffs {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;  // a x^3 + b x^2 + c x + d
  double p = 0.0, q = 0.0;                    // depressed form t^3 + p t + q
  double A = 0.0, B = 0.0;                    // root radius and center
  double phi = 0.0;  // arccos(3q/(A p)); NaN when the roots are not all real

  static CubicCoeffs from(double a, double b, double c, double d);
};

// The three roots A*cos((phi + 2 pi k)/3) + B for k = 0,1,2, sorted
// descending.  Throws domain_error outside the all-real-roots regime
// (an arccos argument within 1e-12 of [-1,1] is clamped, anything farther
// out is the complex-pair regime).
std::array<double, 3> viete_roots(const CubicCoeffs& k);

// Parameter point of the 3x3 families; z is the loop-entry perturbation and
// only the perturbed family reads it.
struct EpsilonPoint {
  double e1 = 0.0;
  double e2 = 0.0;
  double z = 0.0;
};

// Open parameter triangle of the unperturbed family:
// (-1/3, 2/3) x (-2/3, 1/3) intersected with 0 < e1+e2 < 1.
bool in_parameter_triangle(double e1, double e2);

enum class CubicFamily {
  kTriangle,   // z = 0; (e1, e2) over the parameter triangle (closure ok)
  kPerturbed,  // |z| <= 0.01; (e1, e2) near the origin
};

// Quotient matrix of the three-block configuration at (e1, e2), with the
// loop entry shifted by -z.  Nonsymmetric but real-spectrum.
QuotientMatrix three_block_quotient(double e1, double e2, double z);

// Spread sqrt(3)*A*cos((2 phi - pi)/6) of the family's characteristic cubic
// at e, cross-checked against max - min of viete_roots on every call
// (disagreement beyond 1e-10 throws logic_error).  kTriangle evaluates on
// the closed triangle and requires z = 0; kPerturbed requires
// |e1|, |e2| <= 0.06 and |z| <= 0.01.  Out of domain throws domain_error.
double family_spread(const EpsilonPoint& e, CubicFamily family);

// Lattice cell flagged by the gradient scan.
struct CriticalCell {
  double e1 = 0.0;
  double e2 = 0.0;
  double s = 0.0;     // spread at the cell center
  double grad = 0.0;  // central-difference |grad|
};

// Scans the triangle family on a lattice of the given pitch
// (1/10000 <= grid <= 1/100), keeping a 3*grid margin from the triangle
// boundary, and returns every cell with central-difference |grad| below the
// threshold (default 12*grid, enough to catch any cell containing a true
// stationary point).  The boundary margin exists because the spread's only
// maximum sits ON the boundary and its flat valley direction points inward;
// cells that near-critical for that reason are the boundary story, not
// interior stationary points.  Numerical corroboration, not a proof.
std::vector<CriticalCell> scan_critical_points(double grid, double threshold = 0.0);

// Maximizes the perturbed family's spread over [-0.05, 0.05]^2 at the given
// z (|z| <= 0.01): Nelder-Mead-style direct search from the origin, then
// central-difference Newton polish (the direct search alone cannot localize
// a quadratic maximum past ~sqrt(machine eps)).  Deterministic.
EpsilonPoint maximize_perturbed_spread(double z);

}  // namespace spreadlab
