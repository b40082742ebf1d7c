#include "spreadlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace spreadlab {

namespace {

// ---------------------------------------------------------------------------
// cyclic Jacobi, used for everything up to n = 64.  Slow-ish (O(n^3) per
// sweep) but accurate to a few ulps and fully deterministic, which is what
// the brute-force searches and the tight eigenvalue tolerances want.
// Upper triangle of `a` is consumed; eigenvalues land in d, optionally the
// rotation product in v (column j <-> d[j]).
// ---------------------------------------------------------------------------
void jacobi_sym(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>* v) {
  auto A = [&](int i, int j) -> double& { return a[(std::size_t)i * n + j]; };
  if (v) {
    v->assign((std::size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i) (*v)[(std::size_t)i * n + i] = 1.0;
  }
  std::vector<double> b(n), z(n);
  for (int i = 0; i < n; ++i) {
    b[i] = d[i] = A(i, i);
    z[i] = 0.0;
  }

  for (int sweep = 1; sweep <= 100; ++sweep) {
    double sm = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) sm += std::fabs(A(p, q));
    if (sm == 0.0) return;  // upper triangle annihilated exactly

    // first sweeps rotate only the big entries; afterwards everything
    double tresh = (sweep < 4) ? 0.2 * sm / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double g = 100.0 * std::fabs(A(p, q));
        if (sweep > 4 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
            std::fabs(d[q]) + g == std::fabs(d[q])) {
          A(p, q) = 0.0;  // rotation would be below working precision
        } else if (std::fabs(A(p, q)) > tresh) {
          double h = d[q] - d[p];
          double t;
          if (std::fabs(h) + g == std::fabs(h)) {
            t = A(p, q) / h;
          } else {
            double theta = 0.5 * h / A(p, q);
            t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          double c = 1.0 / std::sqrt(1.0 + t * t);
          double s = t * c;
          double tau = s / (1.0 + c);
          h = t * A(p, q);
          z[p] -= h;
          z[q] += h;
          d[p] -= h;
          d[q] += h;
          A(p, q) = 0.0;
          auto rot = [&](double& x, double& y) {
            double gx = x, hy = y;
            x = gx - s * (hy + gx * tau);
            y = hy + s * (gx - hy * tau);
          };
          for (int j = 0; j < p; ++j) rot(A(j, p), A(j, q));
          for (int j = p + 1; j < q; ++j) rot(A(p, j), A(j, q));
          for (int j = q + 1; j < n; ++j) rot(A(p, j), A(q, j));
          if (v)
            for (int j = 0; j < n; ++j)
              rot((*v)[(std::size_t)j * n + p], (*v)[(std::size_t)j * n + q]);
        }
      }
    }
    for (int p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  throw std::runtime_error("jacobi_sym: no convergence in 100 sweeps");
}

// ---------------------------------------------------------------------------
// Householder tridiagonalization + implicit-shift QL for n > 64.  This is the
// classic EISPACK tred2/tql2 pair (via the JAMA translation), 0-based.  v is
// n x n row-major; on entry it holds the matrix, on exit its columns are the
// eigenvectors (when accumulate) and d the eigenvalues.
// ---------------------------------------------------------------------------
void tred2(std::vector<double>& v, int n, std::vector<double>& d, std::vector<double>& e,
           bool accumulate) {
  auto V = [&](int i, int j) -> double& { return v[(std::size_t)i * n + j]; };

  for (int j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0.0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) V(k, j) -= f * e[k] + g * d[k];
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    // the readout below expects the tridiagonal diagonal staged in the last
    // row, which the accumulation loop otherwise does as a side effect
    for (int i = 0; i < n - 1; ++i) V(n - 1, i) = V(i, i);
  } else {
    for (int i = 0; i < n - 1; ++i) {
      V(n - 1, i) = V(i, i);
      V(i, i) = 1.0;
      double h = d[i + 1];
      if (h != 0.0) {
        for (int k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
        for (int j = 0; j <= i; ++j) {
          double g = 0.0;
          for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
          for (int k = 0; k <= i; ++k) V(k, j) -= g * d[k];
        }
      }
      for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
  }
  for (int j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  if (accumulate) V(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

void tql2(std::vector<double>& v, int n, std::vector<double>& d, std::vector<double>& e,
          bool accumulate) {
  auto V = [&](int i, int j) -> double& { return v[(std::size_t)i * n + j]; };

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0, tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
    int m = l;
    while (m < n) {
      // second clause: tred2 can leave subnormal noise in e whose square
      // underflows to zero; treating it as converged shifts eigenvalues by
      // less than n*DBL_MIN, far below every tolerance in this codebase
      if (std::fabs(e[m]) <= eps * tst1 ||
          std::fabs(e[m]) < std::numeric_limits<double>::min())
        break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) throw std::runtime_error("tql2: no convergence in 60 iterations");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        double el1 = e[l + 1], s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          // plain sqrt: values here are O(matrix norm), far from overflow,
          // and this loop is the hot path of the bulk scorer; the rescue
          // branch keeps tiny p, e[i] (whose squares underflow to 0) from
          // turning the rotation into 0/0
          r = std::sqrt(p * p + e[i] * e[i]);
          if (r == 0.0) r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            for (int k = 0; k < n; ++k) {
              h = V(k, i + 1);
              V(k, i + 1) = s * V(k, i) + c * h;
              V(k, i) = c * V(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::fabs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

// full decomposition; eigenvector for d[j] is column j of v (when wanted)
void sym_eig(const SymMatrix& m, std::vector<double>& d, std::vector<double>* v) {
  int n = m.n;
  d.assign(n, 0.0);
  if (n <= 64) {
    std::vector<double> a = m.a;
    jacobi_sym(a, n, d, v);
  } else {
    std::vector<double> work = m.a;
    std::vector<double> e(n, 0.0);
    tred2(work, n, d, e, v != nullptr);
    tql2(work, n, d, e, v != nullptr);
    if (v) *v = std::move(work);
  }
}

void validate_finite_symmetric(const SymMatrix& m, const char* who) {
  if (m.n < 1 || m.a.size() != (std::size_t)m.n * m.n)
    throw std::invalid_argument(std::string(who) + ": bad dimensions");
  for (double x : m.a)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite entry");
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
}

// descending eigenvalue order, ties by original index (deterministic)
std::vector<int> descending_order(const std::vector<double>& d) {
  std::vector<int> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] > d[j]; });
  return idx;
}

void fix_sign_sum_nonneg(std::vector<double>& x) {
  double s = std::accumulate(x.begin(), x.end(), 0.0);
  if (s < 0.0) {
    for (double& t : x) t = -t;
  } else if (s == 0.0) {
    for (double t : x) {
      if (t != 0.0) {
        if (t < 0.0)
          for (double& u : x) u = -u;
        break;
      }
    }
  }
}

void fix_sign_peak_negative(std::vector<double>& z) {
  int peak = 0;
  for (int i = 1; i < (int)z.size(); ++i)
    if (std::fabs(z[i]) > std::fabs(z[peak])) peak = i;
  if (z[peak] > 0.0)
    for (double& t : z) t = -t;
}

void normalize_unit(std::vector<double>& x) {
  double s = 0.0;
  for (double t : x) s += t * t;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& t : x) t /= s;
}

// --- small-matrix eigenvalue machinery (quotient matrices) -----------------

// monic characteristic polynomial coefficients c[0..k] (c[k] = 1) by the
// trace recursion M_{j+1} = A (M_j + c_{k-j} I)
std::vector<double> char_poly(const QuotientMatrix& q) {
  int k = q.k;
  std::vector<double> c(k + 1, 0.0);
  c[k] = 1.0;
  std::vector<double> M((std::size_t)k * k, 0.0), next((std::size_t)k * k, 0.0);
  for (int i = 0; i < k; ++i) M[(std::size_t)i * k + i] = 1.0;  // M_0 = I
  for (int j = 1; j <= k; ++j) {
    // next = A * M
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) {
        double acc = 0.0;
        for (int t = 0; t < k; ++t) acc += q.at(r, t) * M[(std::size_t)t * k + s];
        next[(std::size_t)r * k + s] = acc;
      }
    double tr = 0.0;
    for (int i = 0; i < k; ++i) tr += next[(std::size_t)i * k + i];
    c[k - j] = -tr / j;
    for (int i = 0; i < k; ++i) next[(std::size_t)i * k + i] += c[k - j];
    std::swap(M, next);
  }
  return c;
}

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (int i = (int)c.size() - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

double poly_eval_deriv(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (int i = (int)c.size() - 1; i >= 1; --i) r = r * x + i * c[i];
  return r;
}

[[noreturn]] void complex_pair_error(double imag) {
  throw std::runtime_error("real_eigs_small: complex eigenvalue pair, |Im| = " +
                           std::to_string(imag));
}

// roots of x^2 + b x + c, both real or error; tol is the absolute imaginary
// slack below which a conjugate pair collapses to a double root
void quadratic_roots(double b, double c, double tol, std::vector<double>& out) {
  double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    double imag = std::sqrt(-disc) / 2.0;
    if (imag > tol) complex_pair_error(imag);
    disc = 0.0;
  }
  double sq = std::sqrt(disc);
  double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  if (qq != 0.0) {
    out.push_back(qq);
    out.push_back(c / qq);
  } else {
    out.push_back(-b / 2.0);
    out.push_back(-b / 2.0);
  }
}

// roots of x^3 + b x^2 + c x + d, all real or error
void cubic_roots_real(double b, double c, double d, double tol, std::vector<double>& out) {
  // depress: x = t - b/3
  double p = c - b * b / 3.0;
  double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  double shift = -b / 3.0;
  double half_q = q / 2.0;
  double delta = half_q * half_q + p * p * p / 27.0;  // >0 <=> one real root
  if (delta > 0.0) {
    double s = std::sqrt(delta);
    double u = std::cbrt(-half_q + s);
    double v = std::cbrt(-half_q - s);
    double imag = std::sqrt(3.0) / 2.0 * std::fabs(u - v);
    if (imag > tol) complex_pair_error(imag);
    out.push_back(u + v + shift);
    out.push_back(-(u + v) / 2.0 + shift);
    out.push_back(-(u + v) / 2.0 + shift);
    return;
  }
  if (p >= 0.0) {
    // delta <= 0 and p >= 0 forces p ~ q ~ 0: a (near-)triple root
    out.insert(out.end(), 3, shift);
    return;
  }
  double mcoef = 2.0 * std::sqrt(-p / 3.0);
  double arg = 3.0 * q / (p * mcoef);
  arg = std::clamp(arg, -1.0, 1.0);
  double phi = std::acos(arg);
  for (int k = 0; k < 3; ++k) out.push_back(mcoef * std::cos((phi - 2.0 * M_PI * k) / 3.0) + shift);
}

// roots of x^4 + b x^3 + c x^2 + d x + e, all real or error (Ferrari)
void quartic_roots_real(double b, double c, double d, double e, double tol,
                        std::vector<double>& out) {
  // depress: x = t - b/4
  double b2 = b * b;
  double p = c - 3.0 * b2 / 8.0;
  double q = d - b * c / 2.0 + b2 * b / 8.0;
  double r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
  double shift = -b / 4.0;

  double scale = std::max({1.0, std::fabs(p), std::fabs(q), std::fabs(r)});
  std::vector<double> ts;
  if (std::fabs(q) <= 1e-14 * scale) {
    // biquadratic: t^2 solves z^2 + p z + r
    std::vector<double> zs;
    quadratic_roots(p, r, tol, zs);
    for (double z : zs) {
      if (z < 0.0) {
        double imag = std::sqrt(-z);
        if (imag > tol) complex_pair_error(imag);
        z = 0.0;
      }
      double sq = std::sqrt(z);
      ts.push_back(sq);
      ts.push_back(-sq);
    }
  } else {
    // resolvent Y^3 + 2p Y^2 + (p^2 - 4r) Y - q^2 = 0 has a root Y >= 0;
    // with alpha = sqrt(Y) the quartic splits into two quadratics
    std::vector<double> ys;
    cubic_roots_real(2.0 * p, p * p - 4.0 * r, -q * q, std::numeric_limits<double>::infinity(),
                     ys);
    double Y = *std::max_element(ys.begin(), ys.end());
    if (Y < 0.0) Y = 0.0;
    double alpha = std::sqrt(Y);
    if (alpha == 0.0) alpha = std::numeric_limits<double>::min();  // q != 0 keeps this moot
    double beta = (p + Y - q / alpha) / 2.0;
    double gamma = (p + Y + q / alpha) / 2.0;
    quadratic_roots(alpha, beta, tol, ts);
    quadratic_roots(-alpha, gamma, tol, ts);
  }
  for (double t : ts) out.push_back(t + shift);
}

// --- Hessenberg QR path for k in 5..8 ---------------------------------------

void balance_inplace(std::vector<double>& h, int k) {
  auto H = [&](int i, int j) -> double& { return h[(std::size_t)i * k + j]; };
  const double radix = 2.0;
  bool done = false;
  for (int pass = 0; pass < 20 && !done; ++pass) {
    done = true;
    for (int i = 0; i < k; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        c += std::fabs(H(j, i));
        r += std::fabs(H(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0, s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 0; j < k; ++j) H(i, j) *= g;
        for (int j = 0; j < k; ++j) H(j, i) *= f;
      }
    }
  }
}

void hessenberg_inplace(std::vector<double>& h, int k) {
  auto H = [&](int i, int j) -> double& { return h[(std::size_t)i * k + j]; };
  // Householder both-sided reduction, eigenvalues preserved
  for (int col = 0; col < k - 2; ++col) {
    double norm = 0.0;
    for (int i = col + 1; i < k; ++i) norm += H(i, col) * H(i, col);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    double a0 = H(col + 1, col);
    double alpha = (a0 >= 0.0) ? -norm : norm;
    std::vector<double> w(k, 0.0);
    w[col + 1] = a0 - alpha;
    for (int i = col + 2; i < k; ++i) w[i] = H(i, col);
    double wn = 0.0;
    for (int i = col + 1; i < k; ++i) wn += w[i] * w[i];
    if (wn == 0.0) continue;
    // H <- P H P with P = I - 2 w w^T / (w^T w)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int i = col + 1; i < k; ++i) s += w[i] * H(i, j);
      s = 2.0 * s / wn;
      for (int i = col + 1; i < k; ++i) H(i, j) -= s * w[i];
    }
    for (int i = 0; i < k; ++i) {
      double s = 0.0;
      for (int j = col + 1; j < k; ++j) s += H(i, j) * w[j];
      s = 2.0 * s / wn;
      for (int j = col + 1; j < k; ++j) H(i, j) -= s * w[j];
    }
    for (int i = col + 2; i < k; ++i) H(i, col) = 0.0;
  }
}

std::vector<double> hessenberg_qr_eigs(std::vector<double> h, int k, double imag_tol) {
  auto H = [&](int i, int j) -> double& { return h[(std::size_t)i * k + j]; };
  balance_inplace(h, k);
  hessenberg_inplace(h, k);

  double anorm = 0.0;
  for (double x : h) anorm = std::max(anorm, std::fabs(x));
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> out;
  int m = k - 1;
  int iter = 0;
  while (m >= 0) {
    // deflation scan
    int l = m;
    while (l > 0) {
      double small = eps * (std::fabs(H(l - 1, l - 1)) + std::fabs(H(l, l)));
      if (small == 0.0) small = eps * anorm;
      if (std::fabs(H(l, l - 1)) <= small) {
        H(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == m) {
      out.push_back(H(m, m));
      --m;
      iter = 0;
      continue;
    }
    if (l == m - 1) {
      double a = H(m - 1, m - 1), bq = H(m - 1, m), cq = H(m, m - 1), dq = H(m, m);
      double half = (a - dq) / 2.0;
      double disc = half * half + bq * cq;
      double mid = (a + dq) / 2.0;
      if (disc < 0.0) {
        double imag = std::sqrt(-disc);
        if (imag > imag_tol) complex_pair_error(imag);
        disc = 0.0;
      }
      double sq = std::sqrt(disc);
      out.push_back(mid + sq);
      out.push_back(mid - sq);
      m -= 2;
      iter = 0;
      continue;
    }
    if (++iter > 200) throw std::runtime_error("real_eigs_small: QR iteration stalled");

    // Wilkinson-style real shift from the trailing 2x2 of the active block
    double a = H(m - 1, m - 1), bq = H(m - 1, m), cq = H(m, m - 1), dq = H(m, m);
    double half = (a - dq) / 2.0;
    double disc = half * half + bq * cq;
    double sigma;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      double r1 = (a + dq) / 2.0 + sq, r2 = (a + dq) / 2.0 - sq;
      sigma = (std::fabs(r1 - dq) < std::fabs(r2 - dq)) ? r1 : r2;
    } else {
      sigma = (a + dq) / 2.0;  // complex pair: shift by the real part
    }
    // occasional exceptional shift to break symmetry-induced cycling
    if (iter % 30 == 0) sigma += std::fabs(H(m, m - 1)) + std::fabs(H(m - 1, m - 2));

    // explicit single-shift QR step on rows/cols l..m via Givens
    for (int i = l; i <= m; ++i) H(i, i) -= sigma;
    std::vector<double> cs(m - l, 0.0), sn(m - l, 0.0);
    for (int i = l; i < m; ++i) {
      double x = H(i, i), y = H(i + 1, i);
      double rr = std::hypot(x, y);
      double c = (rr == 0.0) ? 1.0 : x / rr;
      double s = (rr == 0.0) ? 0.0 : y / rr;
      cs[i - l] = c;
      sn[i - l] = s;
      for (int j = i; j <= m; ++j) {
        double t1 = H(i, j), t2 = H(i + 1, j);
        H(i, j) = c * t1 + s * t2;
        H(i + 1, j) = -s * t1 + c * t2;
      }
    }
    for (int i = l; i < m; ++i) {
      double c = cs[i - l], s = sn[i - l];
      int top = std::min(i + 2, m);
      for (int j = l; j <= top; ++j) {
        double t1 = H(j, i), t2 = H(j, i + 1);
        H(j, i) = c * t1 + s * t2;
        H(j, i + 1) = -s * t1 + c * t2;
      }
    }
    for (int i = l; i <= m; ++i) H(i, i) += sigma;
  }
  return out;
}

}  // namespace

namespace detail {

std::pair<double, double> extreme_eigs_inplace(std::vector<double>& a, int n,
                                               std::vector<double>& d, std::vector<double>& e) {
  if (n == 1) return {a[0], a[0]};
  d.resize(n);
  e.resize(n);
  tred2(a, n, d, e, false);
  tql2(a, n, d, e, false);
  double lo = d[0], hi = d[0];
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, d[i]);
    hi = std::max(hi, d[i]);
  }
  return {lo, hi};
}

}  // namespace detail

std::pair<double, double> extreme_eigenvalues(const SymMatrix& m) {
  validate_finite_symmetric(m, "extreme_eigenvalues");
  std::vector<double> a = m.a, d, e;
  return detail::extreme_eigs_inplace(a, m.n, d, e);
}

std::vector<double> eigenvalues(const SymMatrix& m) {
  validate_finite_symmetric(m, "eigenvalues");
  std::vector<double> d;
  sym_eig(m, d, nullptr);
  std::sort(d.begin(), d.end(), std::greater<double>());
  return d;
}

SpectralPair extreme_eigs(const SymMatrix& m) {
  validate_finite_symmetric(m, "extreme_eigs");
  int n = m.n;
  std::vector<double> d, v;
  sym_eig(m, d, &v);
  std::vector<int> ord = descending_order(d);
  int top = ord.front(), bot = ord.back();

  SpectralPair out;
  out.lambda_max = d[top];
  out.lambda_min = d[bot];
  out.spread = out.lambda_max - out.lambda_min;
  out.x.resize(n);
  out.z.resize(n);
  for (int i = 0; i < n; ++i) {
    out.x[i] = v[(std::size_t)i * n + top];
    out.z[i] = v[(std::size_t)i * n + bot];
  }
  normalize_unit(out.x);
  normalize_unit(out.z);
  fix_sign_sum_nonneg(out.x);
  fix_sign_peak_negative(out.z);
  return out;
}

std::vector<double> real_eigs_small(const QuotientMatrix& q) {
  int k = q.k;
  if (k < 1 || k > 8) throw std::invalid_argument("real_eigs_small: need 1 <= k <= 8");
  if (q.a.size() != (std::size_t)k * k)
    throw std::invalid_argument("real_eigs_small: bad dimensions");
  for (double x : q.a)
    if (!std::isfinite(x)) throw std::invalid_argument("real_eigs_small: non-finite entry");

  double anorm = 0.0;
  for (double x : q.a) anorm = std::max(anorm, std::fabs(x));
  const double imag_tol = 1e-8 * std::max(1.0, anorm);

  std::vector<double> roots;
  if (k <= 4) {
    std::vector<double> c = char_poly(q);
    switch (k) {
      case 1:
        roots.push_back(-c[0]);
        break;
      case 2:
        quadratic_roots(c[1], c[0], imag_tol, roots);
        break;
      case 3:
        cubic_roots_real(c[2], c[1], c[0], imag_tol, roots);
        break;
      default:
        quartic_roots_real(c[3], c[2], c[1], c[0], imag_tol, roots);
        break;
    }
    // one Newton step against the characteristic polynomial tightens the
    // closed-form roots; skipped near multiple roots where p' vanishes
    for (double& r : roots) {
      double dp = poly_eval_deriv(c, r);
      double pv = poly_eval(c, r);
      double step_cap = 1e-6 * std::max(1.0, std::fabs(r));
      if (std::fabs(dp) > 1e-8 && std::fabs(pv / dp) < step_cap) r -= pv / dp;
    }
  } else {
    roots = hessenberg_qr_eigs(q.a, k, imag_tol);
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return roots;
}

SymMatrix stepgraphon_matrix(const std::vector<double>& alpha, const SymMatrix& pattern) {
  int k = (int)alpha.size();
  if (k < 1 || pattern.n != k)
    throw std::invalid_argument("stepgraphon_matrix: weight/pattern size mismatch");
  double sum = 0.0;
  for (double w : alpha) {
    if (!(w >= 0.0)) throw std::invalid_argument("stepgraphon_matrix: negative weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("stepgraphon_matrix: weights off the unit simplex");
  for (double b : pattern.a)
    if (b != 0.0 && b != 1.0)
      throw std::invalid_argument("stepgraphon_matrix: pattern entries must be 0/1");

  std::vector<double> s(k);
  for (int i = 0; i < k; ++i) s[i] = std::sqrt(alpha[i]);
  SymMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      if (pattern.at(i, j) != 0.0) m.set(i, j, s[i] * s[j]);
  return m;
}

double graphon_spread_of_graph(const SymMatrix& g) {
  validate_finite_symmetric(g, "graphon_spread_of_graph");
  int n = g.n;
  double direct = extreme_eigs(g).spread / n;

  // independent route: uniform-weight block matrix, spread measured around 0
  // (the flat part of the limit object contributes a zero eigenvalue)
  std::vector<double> alpha(n, 1.0 / n);
  SymMatrix m = stepgraphon_matrix(alpha, g);
  SpectralPair p = extreme_eigs(m);
  double blocked = std::max(p.lambda_max, 0.0) - std::min(p.lambda_min, 0.0);

  if (std::fabs(direct - blocked) > 1e-9)
    throw std::logic_error("graphon_spread_of_graph: scaling routes disagree");
  return direct;
}

}  // namespace spreadlab
